#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apx/ring.hpp"

namespace apx {

// Size limits shared by every set-producing operation.
struct Limits {
  // Finite rings up to this size use bit-indexed sets.
  std::uint64_t dense_threshold = std::uint64_t{1} << 20;
  // Largest derived set; exceeding it raises Error{budget_exceeded}.
  std::uint64_t cardinality_cap = std::uint64_t{1} << 24;
  // Branch-and-bound node limit for exact covers.
  std::uint64_t node_limit = 1'000'000;
  // Element budget for subring and ideal closures.
  std::uint64_t closure_budget = std::uint64_t{1} << 20;
};

enum class Representation { dense, sparse };

Representation choose_representation(const Ring& ring, const Limits& limits);

// Duplicate-free set of elements of one ring, kept in canonical (code) order.
// Dense sets additionally carry a bitmap over the ring's index range.
class FiniteSet {
 public:
  explicit FiniteSet(RingHandle ring, Representation repr);
  explicit FiniteSet(RingHandle ring, const Limits& limits = {});
  FiniteSet(RingHandle ring, std::vector<Element> elements,
            const Limits& limits = {});
  FiniteSet(RingHandle ring, std::vector<Element> elements,
            Representation repr);

  // Adopts a bitmap over the ring's index range.
  static FiniteSet from_bits(RingHandle ring, std::vector<std::uint64_t> bits);

  const RingHandle& ring() const { return ring_; }
  Representation representation() const { return repr_; }
  std::span<const Element> elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }

  bool contains(Element x) const;
  bool is_subset_of(const FiniteSet& other) const;
  // Position of x in canonical order, or size() when absent.
  std::size_t rank(Element x) const;

  // Bitmap words; empty for sparse sets.
  std::span<const std::uint64_t> bits() const { return bits_; }

  FiniteSet with_representation(Representation repr) const;

  // "{e1, e2, ...}" in canonical order.
  std::string render() const;

  friend bool operator==(const FiniteSet& a, const FiniteSet& b);

  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

 private:
  void build_bits();

  RingHandle ring_;
  Representation repr_;
  std::vector<Element> elems_;
  std::vector<std::uint64_t> bits_;
};

// Throws Error{cross_ring} unless both sets live in the same ring.
void require_same_ring(const FiniteSet& a, const FiniteSet& b);

// `{e1, e2, ...}` using the ring's element grammar.
FiniteSet parse_set_literal(const RingHandle& ring, std::string_view text,
                            const Limits& limits = {});

// One element per line; `#` starts a comment.
FiniteSet read_set_file(const RingHandle& ring, const std::string& path,
                        const Limits& limits = {});

FiniteSet set_union(const FiniteSet& a, const FiniteSet& b);
FiniteSet set_intersection(const FiniteSet& a, const FiniteSet& b);

}  // namespace apx
