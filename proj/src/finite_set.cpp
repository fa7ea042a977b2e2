#include "apx/finite_set.hpp"

#include <algorithm>
#include <bit>
#include <fstream>

#include "apx/error.hpp"
#include "text.hpp"

namespace apx {

Representation choose_representation(const Ring& ring, const Limits& limits) {
  auto n = ring.cardinality();
  return n && *n <= limits.dense_threshold ? Representation::dense
                                           : Representation::sparse;
}

FiniteSet::FiniteSet(RingHandle ring, Representation repr)
    : ring_(std::move(ring)), repr_(repr) {
  if (repr_ == Representation::dense && !ring_->is_finite())
    throw Error(ErrorKind::infinite_ring,
                "dense set over infinite ring " + ring_->dsl());
  build_bits();
}

FiniteSet::FiniteSet(RingHandle ring, const Limits& limits)
    : FiniteSet(ring, choose_representation(*ring, limits)) {}

FiniteSet::FiniteSet(RingHandle ring, std::vector<Element> elements,
                     const Limits& limits)
    : FiniteSet(ring, std::move(elements), choose_representation(*ring, limits)) {}

FiniteSet::FiniteSet(RingHandle ring, std::vector<Element> elements,
                     Representation repr)
    : ring_(std::move(ring)), repr_(repr), elems_(std::move(elements)) {
  if (repr_ == Representation::dense && !ring_->is_finite())
    throw Error(ErrorKind::infinite_ring,
                "dense set over infinite ring " + ring_->dsl());
  for (Element x : elems_)
    if (!ring_->contains(x))
      throw Error(ErrorKind::cross_ring, "code " + std::to_string(x.code) +
                                             " is not an element of " +
                                             ring_->dsl());
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  build_bits();
}

FiniteSet FiniteSet::from_bits(RingHandle ring, std::vector<std::uint64_t> bits) {
  FiniteSet s(std::move(ring), Representation::dense);
  const std::uint64_t n = *s.ring_->cardinality();
  bits.resize(s.bits_.size(), 0);
  if (n % 64) bits.back() &= (std::uint64_t{1} << (n % 64)) - 1;
  std::size_t count = 0;
  for (auto w : bits) count += static_cast<std::size_t>(std::popcount(w));
  s.elems_.reserve(count);
  for (std::size_t w = 0; w < bits.size(); ++w) {
    for (std::uint64_t word = bits[w]; word; word &= word - 1)
      s.elems_.push_back(Element{static_cast<std::int64_t>(
          w * 64 + static_cast<std::size_t>(std::countr_zero(word)))});
  }
  s.bits_ = std::move(bits);
  return s;
}

void FiniteSet::build_bits() {
  bits_.clear();
  if (repr_ != Representation::dense) return;
  bits_.assign((*ring_->cardinality() + 63) / 64, 0);
  for (Element x : elems_)
    bits_[static_cast<std::size_t>(x.code) / 64] |=
        std::uint64_t{1} << (x.code % 64);
}

bool FiniteSet::contains(Element x) const {
  if (repr_ == Representation::dense) {
    if (!ring_->contains(x)) return false;
    return (bits_[static_cast<std::size_t>(x.code) / 64] >> (x.code % 64)) & 1;
  }
  return std::binary_search(elems_.begin(), elems_.end(), x);
}

std::size_t FiniteSet::rank(Element x) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), x);
  if (it == elems_.end() || *it != x) return elems_.size();
  return static_cast<std::size_t>(it - elems_.begin());
}

bool FiniteSet::is_subset_of(const FiniteSet& other) const {
  require_same_ring(*this, other);
  return std::all_of(elems_.begin(), elems_.end(),
                     [&](Element x) { return other.contains(x); });
}

FiniteSet FiniteSet::with_representation(Representation repr) const {
  return FiniteSet(ring_, elems_, repr);
}

std::string FiniteSet::render() const {
  std::string out = "{";
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i) out += ", ";
    out += ring_->render(elems_[i]);
  }
  return out + "}";
}

bool operator==(const FiniteSet& a, const FiniteSet& b) {
  return same_ring(a.ring_, b.ring_) && a.elems_ == b.elems_;
}

void require_same_ring(const FiniteSet& a, const FiniteSet& b) {
  if (!same_ring(a.ring(), b.ring()))
    throw Error(ErrorKind::cross_ring, "sets live in different rings: " +
                                           a.ring()->dsl() + " and " +
                                           b.ring()->dsl());
}

FiniteSet parse_set_literal(const RingHandle& ring, std::string_view text,
                            const Limits& limits) {
  auto t = text::trim(text);
  std::size_t offset = static_cast<std::size_t>(t.data() - text.data());
  if (t.size() < 2 || t.front() != '{' || t.back() != '}')
    throw SyntaxError("set literal must be enclosed in '{' '}'", offset);
  auto body = t.substr(1, t.size() - 2);
  std::vector<Element> elems;
  if (!text::trim(body).empty()) {
    for (auto part : text::split_top_level(body, offset + 1))
      elems.push_back(ring->parse_element(part));
  }
  return FiniteSet(ring, std::move(elems), limits);
}

FiniteSet read_set_file(const RingHandle& ring, const std::string& path,
                        const Limits& limits) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open set file " + path);
  std::vector<Element> elems;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto t = text::trim(line);
    if (!t.empty()) elems.push_back(ring->parse_element(t));
  }
  return FiniteSet(ring, std::move(elems), limits);
}

FiniteSet set_union(const FiniteSet& a, const FiniteSet& b) {
  require_same_ring(a, b);
  std::vector<Element> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteSet(a.ring(), std::move(out), a.representation());
}

FiniteSet set_intersection(const FiniteSet& a, const FiniteSet& b) {
  require_same_ring(a, b);
  std::vector<Element> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return FiniteSet(a.ring(), std::move(out), a.representation());
}

}  // namespace apx
