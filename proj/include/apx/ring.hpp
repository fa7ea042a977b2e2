#pragma once

// Computable rings. Every backend encodes its elements as a single 64-bit
// canonical code:
//
//   finite backends   code = dense index in 0..|R|-1, 0 is the additive zero
//   int               code = the integer itself
//   poly:<p>          code = sum c_i p^i (coefficients read as base-p digits)
//
// Index order is fixed per backend: polynomial backends read the coefficient
// vector as a base-p number (constant term least significant); products and
// matrices are lexicographic on their coordinates (first coordinate most
// significant). No backend assumes a multiplicative identity or
// commutativity.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace apx {

struct Element {
  std::int64_t code = 0;

  friend constexpr auto operator<=>(Element, Element) = default;
};

struct ElementHash {
  std::size_t operator()(Element e) const noexcept {
    return std::hash<std::int64_t>{}(e.code);
  }
};

struct RingDescriptor;

struct ModularDesc {
  std::int64_t n = 2;
};
struct PrimeFieldDesc {
  std::int64_t p = 2;
};
// Coefficients are stored constant term first.
struct PolyQuotientDesc {
  std::int64_t p = 2;
  std::vector<std::int64_t> modulus;
};
struct GaloisFieldDesc {
  std::int64_t p = 2;
  int k = 1;
  std::vector<std::int64_t> poly;
};
struct MatrixDesc {
  std::shared_ptr<const RingDescriptor> base;
  int size = 1;
};
struct ProductDesc {
  std::vector<RingDescriptor> factors;
};
struct LazyIntegersDesc {};
struct LazyPolyDesc {
  std::int64_t p = 2;
};
// Row-major n*n tables of element indices.
struct TableDesc {
  std::size_t n = 1;
  std::vector<std::uint32_t> add;
  std::vector<std::uint32_t> mul;
  std::string source;  // file path when loaded from `table:@<path>`
};

struct RingDescriptor {
  std::variant<ModularDesc, PrimeFieldDesc, PolyQuotientDesc, GaloisFieldDesc,
               MatrixDesc, ProductDesc, LazyIntegersDesc, LazyPolyDesc,
               TableDesc>
      value;
};

class Ring {
 public:
  virtual ~Ring() = default;

  // Canonical one-line ring DSL.
  virtual std::string dsl() const = 0;
  // nullopt for infinite rings.
  virtual std::optional<std::uint64_t> cardinality() const = 0;
  // Least L > 0 with L*x = 0 for all x, 0 when no such L exists.
  virtual std::uint64_t characteristic() const = 0;
  virtual bool contains(Element x) const = 0;

  // Raw operations. Operands must belong to this ring; use RingOps for
  // checked access.
  virtual Element add(Element a, Element b) const = 0;
  virtual Element neg(Element a) const = 0;
  virtual Element mul(Element a, Element b) const = 0;

  virtual Element parse_element(std::string_view text) const = 0;
  virtual std::string render(Element x) const = 0;

  // True when the backend is an integral domain by construction
  // (int, poly:<p>, gf). Finite rings can still be checked exhaustively.
  virtual bool known_domain() const { return false; }

  // Additive group is Z/n with code = residue; enables shifted-bitset
  // kernels.
  virtual std::optional<std::int64_t> cyclic_modulus() const {
    return std::nullopt;
  }

  // Deterministic list of `count` small elements. Finite rings return the
  // first codes, lazy rings a window around zero. Used where an infinite
  // ring has to be sampled.
  virtual std::vector<Element> small_elements(std::size_t count) const;

  Element zero() const { return Element{0}; }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  bool is_finite() const { return cardinality().has_value(); }

  const RingDescriptor& descriptor() const { return descriptor_; }

 protected:
  explicit Ring(RingDescriptor desc) : descriptor_(std::move(desc)) {}

 private:
  RingDescriptor descriptor_;
};

using RingHandle = std::shared_ptr<const Ring>;

bool same_ring(const Ring& a, const Ring& b);
bool same_ring(const RingHandle& a, const RingHandle& b);

// Validates the descriptor (primality, monic moduli, irreducibility, table
// axioms) and builds the backend. Throws Error{invalid_descriptor}.
RingHandle make_ring(const RingDescriptor& desc);

// Ring DSL: zmod:<n>, gf:<p>^<k>:<poly>, polyquo:<p>:<poly>,
// mat:<d>:<inner>, prod:(<dsl>,...), int, poly:<p>, table:@<path>.
RingDescriptor parse_ring_descriptor(std::string_view dsl);
RingHandle parse_ring(std::string_view dsl);

// Reads the `table:@<path>` file format: n, then n lines of the addition
// table, then n lines of the multiplication table.
TableDesc read_table_file(const std::string& path);

// Checked element operations.
class RingOps {
 public:
  explicit RingOps(RingHandle ring);

  Element add(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element zero() const { return ring_->zero(); }

  const RingHandle& ring() const { return ring_; }

 private:
  void require(Element x) const;

  RingHandle ring_;
};

RingOps ring_ops(RingHandle ring);

// All elements in dense-index order, zero first. Throws
// Error{infinite_ring} on lazy backends and Error{budget_exceeded} when the
// ring is larger than `limit`.
std::vector<Element> enumerate(const Ring& ring,
                               std::uint64_t limit = std::uint64_t{1} << 26);

// n*x as an iterated sum (n >= 0).
Element scalar_multiple(const Ring& ring, std::uint64_t n, Element x);

// Least L > 0 with L*x = 0 for every element, computed by enumeration.
std::uint64_t characteristic_by_enumeration(const Ring& ring);

struct Quotient {
  RingHandle ring;
  // projection[i] = image of the source element with index i.
  std::vector<Element> projection;
  // representatives[c] = least source element in class c.
  std::vector<Element> representatives;

  Element project(Element x) const {
    return projection[static_cast<std::size_t>(x.code)];
  }
};

class FiniteSet;

// Table-backed quotient by a verified two-sided ideal. Throws
// Error{not_an_ideal} with a violating pair, or Error{infinite_ring}.
Quotient quotient_ring(const RingHandle& ring, const FiniteSet& ideal);

struct Restriction {
  RingHandle ring;
  // embedding[i] = element of the ambient ring with index i in `ring`.
  std::vector<Element> embedding;

  Element lift(Element x) const {
    return embedding[static_cast<std::size_t>(x.code)];
  }
  Element locate(Element ambient) const;
};

// A subring of a finite ring as a ring of its own (table backend), indexed in
// the canonical order of the subset. The set must be closed under +, -, *.
Restriction restrict_to_subring(const FiniteSet& subring);

bool is_prime(std::int64_t n);

}  // namespace apx
