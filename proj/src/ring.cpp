#include "apx/ring.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "apx/error.hpp"
#include "poly_mod.hpp"
#include "ring_internal.hpp"
#include "text.hpp"

namespace apx {

namespace {

constexpr std::uint64_t kMaxFiniteCardinality = std::uint64_t{1} << 62;
constexpr std::uint64_t kTableCacheLimit = 512;

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorKind::invalid_descriptor, what);
}

std::string descriptor_dsl(const RingDescriptor& desc);

struct DslVisitor {
  std::string operator()(const ModularDesc& d) const {
    return "zmod:" + std::to_string(d.n);
  }
  std::string operator()(const PrimeFieldDesc& d) const {
    return "zmod:" + std::to_string(d.p);
  }
  std::string operator()(const PolyQuotientDesc& d) const {
    return "polyquo:" + std::to_string(d.p) + ":" +
           text::render_polynomial(polymod::reduce(d.modulus, d.p));
  }
  std::string operator()(const GaloisFieldDesc& d) const {
    return "gf:" + std::to_string(d.p) + "^" + std::to_string(d.k) + ":" +
           text::render_polynomial(polymod::reduce(d.poly, d.p));
  }
  std::string operator()(const MatrixDesc& d) const {
    return "mat:" + std::to_string(d.size) + ":" + descriptor_dsl(*d.base);
  }
  std::string operator()(const ProductDesc& d) const {
    std::string out = "prod:(";
    for (std::size_t i = 0; i < d.factors.size(); ++i) {
      if (i) out += ',';
      out += descriptor_dsl(d.factors[i]);
    }
    return out + ")";
  }
  std::string operator()(const LazyIntegersDesc&) const { return "int"; }
  std::string operator()(const LazyPolyDesc& d) const {
    return "poly:" + std::to_string(d.p);
  }
  std::string operator()(const TableDesc& d) const {
    return d.source.empty() ? std::string("table:inline") : "table:@" + d.source;
  }
};

std::string descriptor_dsl(const RingDescriptor& desc) {
  return std::visit(DslVisitor{}, desc.value);
}

// ---------------------------------------------------------------------------
// Finite backends share dense indexing and, for small rings, cached tables.

class FiniteBackend : public Ring {
 public:
  std::optional<std::uint64_t> cardinality() const override { return n_; }
  bool contains(Element x) const override {
    return x.code >= 0 && static_cast<std::uint64_t>(x.code) < n_;
  }
  Element add(Element a, Element b) const override {
    if (!add_table_.empty()) return Element{add_table_[index(a, b)]};
    return compute_add(a, b);
  }
  Element mul(Element a, Element b) const override {
    if (!mul_table_.empty()) return Element{mul_table_[index(a, b)]};
    return compute_mul(a, b);
  }
  Element neg(Element a) const override {
    if (!neg_table_.empty())
      return Element{neg_table_[static_cast<std::size_t>(a.code)]};
    return compute_neg(a);
  }
  std::string dsl() const override { return descriptor_dsl(descriptor()); }

 protected:
  FiniteBackend(RingDescriptor desc, std::uint64_t n)
      : Ring(std::move(desc)), n_(n) {}

  virtual Element compute_add(Element a, Element b) const = 0;
  virtual Element compute_mul(Element a, Element b) const = 0;
  virtual Element compute_neg(Element a) const = 0;

  // Called at the end of the most-derived constructor.
  void cache_tables() {
    if (n_ > kTableCacheLimit) return;
    std::vector<std::uint32_t> add(n_ * n_), mul(n_ * n_), neg(n_);
    for (std::uint64_t a = 0; a < n_; ++a) {
      neg[a] = static_cast<std::uint32_t>(compute_neg(Element{std::int64_t(a)}).code);
      for (std::uint64_t b = 0; b < n_; ++b) {
        Element x{std::int64_t(a)}, y{std::int64_t(b)};
        add[a * n_ + b] = static_cast<std::uint32_t>(compute_add(x, y).code);
        mul[a * n_ + b] = static_cast<std::uint32_t>(compute_mul(x, y).code);
      }
    }
    add_table_ = std::move(add);
    mul_table_ = std::move(mul);
    neg_table_ = std::move(neg);
  }

  std::uint64_t size() const { return n_; }

 private:
  std::size_t index(Element a, Element b) const {
    return static_cast<std::size_t>(a.code) * n_ +
           static_cast<std::size_t>(b.code);
  }

  std::uint64_t n_;
  std::vector<std::uint32_t> add_table_, mul_table_, neg_table_;
};

class ModularRing final : public FiniteBackend {
 public:
  ModularRing(RingDescriptor desc, std::int64_t n, bool field)
      : FiniteBackend(std::move(desc), static_cast<std::uint64_t>(n)),
        n_(n),
        field_(field) {
    cache_tables();
  }

  std::uint64_t characteristic() const override { return size(); }
  bool known_domain() const override { return field_; }
  std::optional<std::int64_t> cyclic_modulus() const override { return n_; }

  Element parse_element(std::string_view t) const override {
    return Element{polymod::residue(text::parse_integer(t), n_)};
  }
  std::string render(Element x) const override {
    return std::to_string(x.code);
  }

 protected:
  Element compute_add(Element a, Element b) const override {
    return Element{a.code >= n_ - b.code ? a.code - (n_ - b.code)
                                         : a.code + b.code};
  }
  Element compute_neg(Element a) const override {
    return Element{a.code == 0 ? 0 : n_ - a.code};
  }
  Element compute_mul(Element a, Element b) const override {
    return Element{static_cast<std::int64_t>(
        static_cast<unsigned __int128>(a.code) * b.code % n_)};
  }

 private:
  std::int64_t n_;
  bool field_;
};

// F_p[t]/(m) for monic m; a field when m is irreducible.
class PolyQuotientRing final : public FiniteBackend {
 public:
  PolyQuotientRing(RingDescriptor desc, std::int64_t p, polymod::Poly modulus,
                   bool field)
      : FiniteBackend(std::move(desc),
                      polymod::checked_pow(static_cast<std::uint64_t>(p),
                                           modulus.size() - 1,
                                           kMaxFiniteCardinality)),
        p_(p),
        degree_(modulus.size() - 1),
        modulus_(std::move(modulus)),
        field_(field) {
    cache_tables();
  }

  std::uint64_t characteristic() const override {
    return static_cast<std::uint64_t>(p_);
  }
  bool known_domain() const override { return field_; }

  Element parse_element(std::string_view t) const override {
    auto f = polymod::reduce(text::parse_polynomial(t), p_);
    return Element{polymod::encode(polymod::rem_monic(f, modulus_, p_), p_)};
  }
  std::string render(Element x) const override {
    return text::render_polynomial(polymod::decode(x.code, p_));
  }

 protected:
  Element compute_add(Element a, Element b) const override {
    auto x = polymod::decode(a.code, p_, degree_);
    auto y = polymod::decode(b.code, p_, degree_);
    for (std::size_t i = 0; i < degree_; ++i) x[i] = (x[i] + y[i]) % p_;
    return Element{polymod::encode(x, p_)};
  }
  Element compute_neg(Element a) const override {
    auto x = polymod::decode(a.code, p_, degree_);
    for (auto& c : x) c = (p_ - c) % p_;
    return Element{polymod::encode(x, p_)};
  }
  Element compute_mul(Element a, Element b) const override {
    auto prod = polymod::mul(polymod::decode(a.code, p_),
                             polymod::decode(b.code, p_), p_);
    return Element{polymod::encode(polymod::rem_monic(prod, modulus_, p_), p_)};
  }

 private:
  std::int64_t p_;
  std::size_t degree_;
  polymod::Poly modulus_;
  bool field_;
};

// Mixed-radix helpers; coordinate 0 is most significant.
std::vector<std::int64_t> split_radix(std::int64_t code,
                                      const std::vector<std::uint64_t>& radix) {
  std::vector<std::int64_t> out(radix.size());
  auto c = static_cast<std::uint64_t>(code);
  for (std::size_t i = radix.size(); i-- > 0;) {
    out[i] = static_cast<std::int64_t>(c % radix[i]);
    c /= radix[i];
  }
  return out;
}

std::int64_t join_radix(const std::vector<std::int64_t>& coords,
                        const std::vector<std::uint64_t>& radix) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < radix.size(); ++i)
    c = c * radix[i] + static_cast<std::uint64_t>(coords[i]);
  return static_cast<std::int64_t>(c);
}

std::string_view strip_brackets(std::string_view s, char open, char close,
                                std::size_t offset) {
  auto t = text::trim(s);
  if (t.size() < 2 || t.front() != open || t.back() != close)
    throw SyntaxError(std::string("expected '") + open + "' ... '" + close + "'",
                      offset);
  return t.substr(1, t.size() - 2);
}

class MatrixRing final : public FiniteBackend {
 public:
  MatrixRing(RingDescriptor desc, RingHandle base, int d)
      : FiniteBackend(std::move(desc),
                      polymod::checked_pow(*base->cardinality(),
                                           static_cast<std::uint64_t>(d) * d,
                                           kMaxFiniteCardinality)),
        base_(std::move(base)),
        d_(static_cast<std::size_t>(d)),
        radix_(d_ * d_, *base_->cardinality()) {
    cache_tables();
  }

  std::uint64_t characteristic() const override {
    return base_->characteristic();
  }

  Element parse_element(std::string_view t) const override {
    auto body = strip_brackets(t, '[', ']', 0);
    auto rows = text::split_top_level(body, 1);
    if (rows.size() != d_)
      throw SyntaxError("expected " + std::to_string(d_) + " rows", 0);
    std::vector<std::int64_t> entries;
    for (auto row : rows) {
      auto cells = text::split_top_level(strip_brackets(row, '[', ']', 0));
      if (cells.size() != d_)
        throw SyntaxError("expected " + std::to_string(d_) + " entries", 0);
      for (auto cell : cells)
        entries.push_back(base_->parse_element(cell).code);
    }
    return Element{join_radix(entries, radix_)};
  }
  std::string render(Element x) const override {
    auto e = split_radix(x.code, radix_);
    std::string out = "[";
    for (std::size_t i = 0; i < d_; ++i) {
      out += i ? ",[" : "[";
      for (std::size_t j = 0; j < d_; ++j) {
        if (j) out += ',';
        out += base_->render(Element{e[i * d_ + j]});
      }
      out += ']';
    }
    return out + "]";
  }

 protected:
  Element compute_add(Element a, Element b) const override {
    auto x = split_radix(a.code, radix_), y = split_radix(b.code, radix_);
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = base_->add(Element{x[i]}, Element{y[i]}).code;
    return Element{join_radix(x, radix_)};
  }
  Element compute_neg(Element a) const override {
    auto x = split_radix(a.code, radix_);
    for (auto& c : x) c = base_->neg(Element{c}).code;
    return Element{join_radix(x, radix_)};
  }
  Element compute_mul(Element a, Element b) const override {
    auto x = split_radix(a.code, radix_), y = split_radix(b.code, radix_);
    std::vector<std::int64_t> z(x.size());
    for (std::size_t i = 0; i < d_; ++i) {
      for (std::size_t j = 0; j < d_; ++j) {
        Element acc = base_->zero();
        for (std::size_t k = 0; k < d_; ++k)
          acc = base_->add(acc, base_->mul(Element{x[i * d_ + k]},
                                           Element{y[k * d_ + j]}));
        z[i * d_ + j] = acc.code;
      }
    }
    return Element{join_radix(z, radix_)};
  }

 private:
  RingHandle base_;
  std::size_t d_;
  std::vector<std::uint64_t> radix_;
};

std::uint64_t product_cardinality(const std::vector<RingHandle>& fs) {
  std::uint64_t n = 1;
  for (const auto& f : fs) {
    if (__builtin_mul_overflow(n, *f->cardinality(), &n) ||
        n > kMaxFiniteCardinality)
      invalid("product ring cardinality exceeds 2^62");
  }
  return n;
}

class ProductRing final : public FiniteBackend {
 public:
  ProductRing(RingDescriptor desc, std::vector<RingHandle> factors)
      : FiniteBackend(std::move(desc), product_cardinality(factors)),
        factors_(std::move(factors)) {
    for (const auto& f : factors_) radix_.push_back(*f->cardinality());
    cache_tables();
  }

  std::uint64_t characteristic() const override {
    std::uint64_t l = 1;
    for (const auto& f : factors_) l = std::lcm(l, f->characteristic());
    return l;
  }

  Element parse_element(std::string_view t) const override {
    auto parts = text::split_top_level(strip_brackets(t, '(', ')', 0), 1);
    if (parts.size() != factors_.size())
      throw SyntaxError(
          "expected " + std::to_string(factors_.size()) + " components", 0);
    std::vector<std::int64_t> c(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i)
      c[i] = factors_[i]->parse_element(parts[i]).code;
    return Element{join_radix(c, radix_)};
  }
  std::string render(Element x) const override {
    auto c = split_radix(x.code, radix_);
    std::string out = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ',';
      out += factors_[i]->render(Element{c[i]});
    }
    return out + ")";
  }

 protected:
  Element compute_add(Element a, Element b) const override {
    auto x = split_radix(a.code, radix_), y = split_radix(b.code, radix_);
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = factors_[i]->add(Element{x[i]}, Element{y[i]}).code;
    return Element{join_radix(x, radix_)};
  }
  Element compute_neg(Element a) const override {
    auto x = split_radix(a.code, radix_);
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = factors_[i]->neg(Element{x[i]}).code;
    return Element{join_radix(x, radix_)};
  }
  Element compute_mul(Element a, Element b) const override {
    auto x = split_radix(a.code, radix_), y = split_radix(b.code, radix_);
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = factors_[i]->mul(Element{x[i]}, Element{y[i]}).code;
    return Element{join_radix(x, radix_)};
  }

 private:
  std::vector<RingHandle> factors_;
  std::vector<std::uint64_t> radix_;
};

class TableRing final : public FiniteBackend {
 public:
  TableRing(RingDescriptor desc, const TableDesc& t)
      : FiniteBackend(std::move(desc), t.n), n_(t.n), add_(t.add), mul_(t.mul) {
    neg_.assign(n_, 0);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        if (add_[a * n_ + b] == 0) neg_[a] = static_cast<std::uint32_t>(b);
    characteristic_ = characteristic_by_enumeration(*this);
  }

  std::uint64_t characteristic() const override { return characteristic_; }

  Element parse_element(std::string_view t) const override {
    std::int64_t v = text::parse_integer(t);
    if (v < 0 || static_cast<std::size_t>(v) >= n_)
      throw Error(ErrorKind::syntax, "element index " + std::to_string(v) +
                                         " is outside table ring of size " +
                                         std::to_string(n_));
    return Element{v};
  }
  std::string render(Element x) const override {
    return std::to_string(x.code);
  }

 protected:
  Element compute_add(Element a, Element b) const override {
    return Element{add_[a.code * n_ + b.code]};
  }
  Element compute_neg(Element a) const override {
    return Element{neg_[static_cast<std::size_t>(a.code)]};
  }
  Element compute_mul(Element a, Element b) const override {
    return Element{mul_[a.code * n_ + b.code]};
  }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> add_, mul_, neg_;
  std::uint64_t characteristic_ = 0;
};

// ---------------------------------------------------------------------------
// Lazy backends.

[[noreturn]] void overflow(const char* op) {
  throw Error(ErrorKind::budget_exceeded,
              std::string("integer ") + op + " overflows 64-bit encoding");
}

class LazyIntegers final : public Ring {
 public:
  LazyIntegers() : Ring(RingDescriptor{LazyIntegersDesc{}}) {}

  std::string dsl() const override { return "int"; }
  std::optional<std::uint64_t> cardinality() const override {
    return std::nullopt;
  }
  std::uint64_t characteristic() const override { return 0; }
  bool contains(Element) const override { return true; }
  bool known_domain() const override { return true; }

  Element add(Element a, Element b) const override {
    std::int64_t r;
    if (__builtin_add_overflow(a.code, b.code, &r)) overflow("addition");
    return Element{r};
  }
  Element neg(Element a) const override {
    if (a.code == INT64_MIN) overflow("negation");
    return Element{-a.code};
  }
  Element mul(Element a, Element b) const override {
    std::int64_t r;
    if (__builtin_mul_overflow(a.code, b.code, &r)) overflow("product");
    return Element{r};
  }
  Element parse_element(std::string_view t) const override {
    return Element{text::parse_integer(t)};
  }
  std::string render(Element x) const override {
    return std::to_string(x.code);
  }
  std::vector<Element> small_elements(std::size_t count) const override {
    std::vector<Element> out;
    for (std::int64_t k = 0; out.size() < count; ++k) {
      out.push_back(Element{k});
      if (k != 0 && out.size() < count) out.push_back(Element{-k});
    }
    return out;
  }
};

class LazyPoly final : public Ring {
 public:
  explicit LazyPoly(std::int64_t p) : Ring(RingDescriptor{LazyPolyDesc{p}}), p_(p) {}

  std::string dsl() const override { return "poly:" + std::to_string(p_); }
  std::optional<std::uint64_t> cardinality() const override {
    return std::nullopt;
  }
  std::uint64_t characteristic() const override {
    return static_cast<std::uint64_t>(p_);
  }
  bool contains(Element x) const override { return x.code >= 0; }
  bool known_domain() const override { return true; }

  Element add(Element a, Element b) const override {
    if (p_ == 2) return Element{a.code ^ b.code};
    auto x = polymod::decode(a.code, p_), y = polymod::decode(b.code, p_);
    if (x.size() < y.size()) x.resize(y.size(), 0);
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = (x[i] + y[i]) % p_;
    return Element{polymod::encode(x, p_)};
  }
  Element neg(Element a) const override {
    if (p_ == 2) return a;
    auto x = polymod::decode(a.code, p_);
    for (auto& c : x) c = (p_ - c) % p_;
    return Element{polymod::encode(x, p_)};
  }
  Element mul(Element a, Element b) const override {
    return Element{polymod::encode(
        polymod::mul(polymod::decode(a.code, p_), polymod::decode(b.code, p_),
                     p_),
        p_)};
  }
  Element parse_element(std::string_view t) const override {
    return Element{
        polymod::encode(polymod::reduce(text::parse_polynomial(t), p_), p_)};
  }
  std::string render(Element x) const override {
    return text::render_polynomial(polymod::decode(x.code, p_));
  }
  std::vector<Element> small_elements(std::size_t count) const override {
    std::vector<Element> out;
    for (std::size_t k = 0; k < count; ++k)
      out.push_back(Element{static_cast<std::int64_t>(k)});
    return out;
  }

 private:
  std::int64_t p_;
};

// ---------------------------------------------------------------------------
// Validation.

void validate_table(const TableDesc& t) {
  const std::size_t n = t.n;
  if (n < 1) invalid("table ring needs at least one element");
  if (t.add.size() != n * n || t.mul.size() != n * n)
    invalid("table ring tables must be " + std::to_string(n) + "x" +
            std::to_string(n));
  for (auto v : t.add)
    if (v >= n) invalid("addition table entry out of range");
  for (auto v : t.mul)
    if (v >= n) invalid("multiplication table entry out of range");
  auto A = [&](std::size_t a, std::size_t b) { return t.add[a * n + b]; };
  auto M = [&](std::size_t a, std::size_t b) { return t.mul[a * n + b]; };
  auto triple = [](std::size_t a, std::size_t b, std::size_t c) {
    return " (" + std::to_string(a) + "," + std::to_string(b) + "," +
           std::to_string(c) + ")";
  };
  for (std::size_t a = 0; a < n; ++a) {
    if (A(0, a) != a || A(a, 0) != a)
      invalid("additive identity: index 0 is not neutral for " +
              std::to_string(a));
    bool has_inverse = false;
    for (std::size_t b = 0; b < n; ++b) {
      if (A(a, b) != A(b, a))
        invalid("additive commutativity fails for (" + std::to_string(a) + "," +
                std::to_string(b) + ")");
      if (A(a, b) == 0) has_inverse = true;
    }
    if (!has_inverse)
      invalid("additive inverse missing for " + std::to_string(a));
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        if (A(A(a, b), c) != A(a, A(b, c)))
          invalid("additive associativity fails" + triple(a, b, c));
        if (M(M(a, b), c) != M(a, M(b, c)))
          invalid("multiplicative associativity fails" + triple(a, b, c));
        if (M(a, A(b, c)) != A(M(a, b), M(a, c)))
          invalid("left distributivity fails" + triple(a, b, c));
        if (M(A(a, b), c) != A(M(a, c), M(b, c)))
          invalid("right distributivity fails" + triple(a, b, c));
      }
}

polymod::Poly checked_monic(const std::vector<std::int64_t>& coeffs,
                            std::int64_t p, const char* what) {
  auto f = polymod::reduce(coeffs, p);
  if (f.size() < 2) invalid(std::string(what) + " must have degree >= 1");
  if (f.back() != 1) invalid(std::string(what) + " must be monic");
  return f;
}

struct MakeVisitor {
  const RingDescriptor& desc;

  RingHandle operator()(const ModularDesc& d) const {
    if (d.n < 2) invalid("zmod modulus must be >= 2, got " + std::to_string(d.n));
    if (static_cast<std::uint64_t>(d.n) > kMaxFiniteCardinality)
      invalid("zmod modulus exceeds 2^62");
    return std::make_shared<ModularRing>(desc, d.n, is_prime(d.n));
  }
  RingHandle operator()(const PrimeFieldDesc& d) const {
    if (!is_prime(d.p)) invalid("prime field needs a prime, got " + std::to_string(d.p));
    if (static_cast<std::uint64_t>(d.p) > kMaxFiniteCardinality)
      invalid("prime exceeds 2^62");
    return std::make_shared<ModularRing>(desc, d.p, true);
  }
  RingHandle operator()(const PolyQuotientDesc& d) const {
    if (!is_prime(d.p)) invalid("polyquo base must be prime, got " + std::to_string(d.p));
    auto m = checked_monic(d.modulus, d.p, "polyquo modulus");
    bool field = polymod::is_irreducible(m, d.p);
    return std::make_shared<PolyQuotientRing>(desc, d.p, std::move(m), field);
  }
  RingHandle operator()(const GaloisFieldDesc& d) const {
    if (!is_prime(d.p)) invalid("gf characteristic must be prime, got " + std::to_string(d.p));
    if (d.k < 1) invalid("gf degree must be >= 1");
    auto f = checked_monic(d.poly, d.p, "gf polynomial");
    if (f.size() - 1 != static_cast<std::size_t>(d.k))
      invalid("gf polynomial degree " + std::to_string(f.size() - 1) +
              " does not match k = " + std::to_string(d.k));
    if (!polymod::is_irreducible(f, d.p))
      invalid("gf polynomial " + text::render_polynomial(f) +
              " is reducible over F_" + std::to_string(d.p));
    return std::make_shared<PolyQuotientRing>(desc, d.p, std::move(f), true);
  }
  RingHandle operator()(const MatrixDesc& d) const {
    if (!d.base) invalid("matrix ring needs a base ring");
    if (d.size < 1) invalid("matrix size must be >= 1");
    auto base = make_ring(*d.base);
    if (!base->is_finite()) invalid("matrix base ring must be finite");
    return std::make_shared<MatrixRing>(desc, std::move(base), d.size);
  }
  RingHandle operator()(const ProductDesc& d) const {
    if (d.factors.empty()) invalid("product ring needs at least one factor");
    std::vector<RingHandle> fs;
    for (const auto& f : d.factors) {
      fs.push_back(make_ring(f));
      if (!fs.back()->is_finite()) invalid("product factors must be finite");
    }
    return std::make_shared<ProductRing>(desc, std::move(fs));
  }
  RingHandle operator()(const LazyIntegersDesc&) const {
    return std::make_shared<LazyIntegers>();
  }
  RingHandle operator()(const LazyPolyDesc& d) const {
    if (!is_prime(d.p)) invalid("poly base must be prime, got " + std::to_string(d.p));
    return std::make_shared<LazyPoly>(d.p);
  }
  RingHandle operator()(const TableDesc& d) const {
    validate_table(d);
    return std::make_shared<TableRing>(desc, d);
  }
};

}  // namespace

// ---------------------------------------------------------------------------

std::vector<Element> Ring::small_elements(std::size_t count) const {
  std::vector<Element> out;
  auto n = cardinality();
  for (std::size_t k = 0; k < count && (!n || k < *n); ++k)
    out.push_back(Element{static_cast<std::int64_t>(k)});
  return out;
}

bool same_ring(const Ring& a, const Ring& b) {
  if (&a == &b) return true;
  if (a.dsl() != b.dsl()) return false;
  // Inline tables share the DSL string, so compare contents.
  const auto* ta = std::get_if<TableDesc>(&a.descriptor().value);
  const auto* tb = std::get_if<TableDesc>(&b.descriptor().value);
  if (ta && tb) return ta->add == tb->add && ta->mul == tb->mul;
  return true;
}

bool same_ring(const RingHandle& a, const RingHandle& b) {
  return a && b && same_ring(*a, *b);
}

RingHandle make_ring(const RingDescriptor& desc) {
  return std::visit(MakeVisitor{desc}, desc.value);
}

RingHandle make_table_ring_unchecked(TableDesc table) {
  RingDescriptor desc{table};
  return std::make_shared<TableRing>(desc, table);
}

TableDesc read_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open table file " + path);
  TableDesc t;
  t.source = path;
  if (!(in >> t.n)) invalid("table file " + path + ": missing size");
  if (t.n == 0 || t.n > 4096) invalid("table file " + path + ": bad size");
  t.add.resize(t.n * t.n);
  t.mul.resize(t.n * t.n);
  for (auto* table : {&t.add, &t.mul})
    for (auto& v : *table)
      if (!(in >> v)) invalid("table file " + path + ": truncated table");
  return t;
}

RingDescriptor parse_ring_descriptor(std::string_view dsl) {
  dsl = text::trim(dsl);
  auto rest_after = [&](std::string_view prefix) -> std::optional<std::string_view> {
    if (dsl.substr(0, prefix.size()) == prefix) return dsl.substr(prefix.size());
    return std::nullopt;
  };
  auto prime_param = [](std::string_view s, std::size_t off) {
    return text::parse_integer(s, off);
  };

  if (dsl == "int") return RingDescriptor{LazyIntegersDesc{}};
  if (auto r = rest_after("zmod:"))
    return RingDescriptor{ModularDesc{text::parse_integer(*r, 5)}};
  if (auto r = rest_after("poly:"))
    return RingDescriptor{LazyPolyDesc{prime_param(*r, 5)}};
  if (auto r = rest_after("polyquo:")) {
    auto colon = r->find(':');
    if (colon == std::string_view::npos) throw SyntaxError("expected ':'", 8 + r->size());
    PolyQuotientDesc d;
    d.p = prime_param(r->substr(0, colon), 8);
    d.modulus = text::parse_polynomial(r->substr(colon + 1), 9 + colon);
    return RingDescriptor{d};
  }
  if (auto r = rest_after("gf:")) {
    auto caret = r->find('^');
    auto colon = r->find(':');
    if (caret == std::string_view::npos || colon == std::string_view::npos ||
        colon < caret)
      throw SyntaxError("expected gf:<p>^<k>:<poly>", 3);
    GaloisFieldDesc d;
    d.p = prime_param(r->substr(0, caret), 3);
    d.k = static_cast<int>(text::parse_integer(r->substr(caret + 1, colon - caret - 1), 4 + caret));
    d.poly = text::parse_polynomial(r->substr(colon + 1), 4 + colon);
    return RingDescriptor{d};
  }
  if (auto r = rest_after("mat:")) {
    auto colon = r->find(':');
    if (colon == std::string_view::npos) throw SyntaxError("expected ':'", 4 + r->size());
    MatrixDesc d;
    d.size = static_cast<int>(text::parse_integer(r->substr(0, colon), 4));
    d.base = std::make_shared<RingDescriptor>(parse_ring_descriptor(r->substr(colon + 1)));
    return RingDescriptor{d};
  }
  if (auto r = rest_after("prod:")) {
    auto body = strip_brackets(*r, '(', ')', 5);
    ProductDesc d;
    for (auto part : text::split_top_level(body, 6))
      d.factors.push_back(parse_ring_descriptor(part));
    return RingDescriptor{d};
  }
  if (auto r = rest_after("table:@")) {
    return RingDescriptor{read_table_file(std::string(text::trim(*r)))};
  }
  throw SyntaxError("unknown ring '" + std::string(dsl) + "'", 0);
}

RingHandle parse_ring(std::string_view dsl) {
  return make_ring(parse_ring_descriptor(dsl));
}

RingOps::RingOps(RingHandle ring) : ring_(std::move(ring)) {}

void RingOps::require(Element x) const {
  if (!ring_->contains(x))
    throw Error(ErrorKind::cross_ring, "operand code " + std::to_string(x.code) +
                                           " is not an element of " +
                                           ring_->dsl());
}

Element RingOps::add(Element a, Element b) const {
  require(a);
  require(b);
  return ring_->add(a, b);
}
Element RingOps::neg(Element a) const {
  require(a);
  return ring_->neg(a);
}
Element RingOps::mul(Element a, Element b) const {
  require(a);
  require(b);
  return ring_->mul(a, b);
}
Element RingOps::sub(Element a, Element b) const {
  require(a);
  require(b);
  return ring_->sub(a, b);
}

RingOps ring_ops(RingHandle ring) { return RingOps(std::move(ring)); }

std::vector<Element> enumerate(const Ring& ring, std::uint64_t limit) {
  auto n = ring.cardinality();
  if (!n)
    throw Error(ErrorKind::infinite_ring,
                "cannot enumerate infinite ring " + ring.dsl());
  if (*n > limit)
    throw Error(ErrorKind::budget_exceeded,
                "ring " + ring.dsl() + " has " + std::to_string(*n) +
                    " elements, above the enumeration limit");
  std::vector<Element> out(*n);
  for (std::uint64_t i = 0; i < *n; ++i)
    out[i] = Element{static_cast<std::int64_t>(i)};
  return out;
}

Element scalar_multiple(const Ring& ring, std::uint64_t n, Element x) {
  Element acc = ring.zero();
  Element power = x;
  while (n) {
    if (n & 1) acc = ring.add(acc, power);
    power = ring.add(power, power);
    n >>= 1;
  }
  return acc;
}

std::uint64_t characteristic_by_enumeration(const Ring& ring) {
  std::uint64_t l = 1;
  for (Element x : enumerate(ring)) {
    std::uint64_t order = 1;
    for (Element y = x; y != ring.zero(); y = ring.add(y, x)) ++order;
    l = std::lcm(l, order);
  }
  return l;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d <= n / d; ++d)
    if (n % d == 0) return false;
  return true;
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_descriptor: return "invalid-descriptor";
    case ErrorKind::syntax: return "syntax";
    case ErrorKind::cross_ring: return "cross-ring";
    case ErrorKind::infinite_ring: return "infinite-ring";
    case ErrorKind::not_an_ideal: return "not-an-ideal";
    case ErrorKind::not_symmetric: return "not-symmetric";
    case ErrorKind::uncoverable: return "uncoverable";
    case ErrorKind::budget_exceeded: return "budget-exceeded";
    case ErrorKind::verification_failed: return "verification-failed";
    case ErrorKind::zero_divisor_found: return "zero-divisor-found";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::budget_exceeded: return 3;
    case ErrorKind::verification_failed: return 4;
    case ErrorKind::io: return 1;
    default: return 2;
  }
}

}  // namespace apx
