#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "spi/poset.hpp"

namespace spi {

// splitmix64 (Steele, Lea and Flood), a small 64-bit generator with full
// period. Every random decision in the generators below comes from it, so
// a seed reproduces an instance bit for bit on any platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform draw from [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  void shuffle(std::vector<int>& v);

 private:
  std::uint64_t state_;
};

// Shape of the hard family at a given size: n = w^c with w even and
// h = w^(c-1) / 2 at least 2. Returns {w, h} when n qualifies.
std::optional<std::pair<int, int>> family_shape(long long n, int c);

// Valid family size closest to n for this c; ties go to the smaller size.
long long nearest_family_n(long long n, int c);

struct FamilyInstance {
  PosetInstance inst;
  int w = 0;
  int h = 0;
  // slot_of_leftover[i] is the slot of element n/2 + 1 + i. Slot s lies in
  // chain 1 + s % w between backbone levels s / w and s / w + 1.
  std::vector<int> slot_of_leftover;
};

// Hard instance family: w disjoint chains. Elements 1..n/2 form a backbone
// (element e sits in chain 1 + (e-1) % w at level (e-1) / w); every element
// above n/2 falls into a uniformly random slot, and elements sharing a slot
// are chained by id. The hidden order concatenates the chains.
FamilyInstance gen_lower_bound_family(long long n, int c, std::uint64_t seed);

// Reads the slot assignment back out of a full linear order of a family
// instance. Throws ArgumentError when the order cannot have come from one.
std::vector<int> recover_family_partial_order(const std::vector<int>& order,
                                              long long n, int c);

// Disjoint union of `chains` chains with uniformly random sizes; elements
// are numbered chain by chain and the hidden order is a uniformly random
// interleaving.
PosetInstance gen_random_chain_union(int n, int chains, std::uint64_t seed);

// Random poset on n <= 64 elements: a random permutation orients every
// sampled pair, the sampled relation is closed transitively and the cover
// is its transitive reduction. The hidden order is a random topological
// sort. density in [0, 1] is the per-pair sampling probability.
PosetInstance gen_random_poset(int n, double density, std::uint64_t seed);

}  // namespace spi
