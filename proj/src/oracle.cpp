#include "spi/oracle.hpp"

#include <sstream>

#include "spi/errors.hpp"

namespace spi {

namespace {

void check_pair(int n, int i, int j) {
  if (i < 1 || i > n || j < 1 || j > n) {
    std::ostringstream msg;
    msg << "oracle query (" << i << ", " << j << ") out of range 1.." << n;
    throw ArgumentError(msg.str());
  }
  if (i == j) throw ArgumentError("oracle query with i == j");
}

}  // namespace

void PartialOracle::check(int i, int j) const { check_pair(inst_->n, i, j); }

LinearOracle::LinearOracle(const PosetInstance& inst)
    : inst_(&inst), pos_(inst.n + 1, 0) {
  for (int i = 0; i < inst.n; ++i) pos_[inst.hidden_order[i]] = i;
}

void LinearOracle::check(int i, int j) const { check_pair(inst_->n, i, j); }

}  // namespace spi
