// Parallel sumset / product-set kernels.

#include "setalg_kernels.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "apx/error.hpp"

namespace apx::kernels {

namespace {

constexpr std::size_t kParallelWork = std::size_t{1} << 14;

[[noreturn]] void over_cap(std::uint64_t cap) {
  throw Error(ErrorKind::budget_exceeded,
              "derived set exceeds the cardinality cap of " + std::to_string(cap));
}

// dst |= rotate_left(src, s) over an n-bit ring; src has no bits >= n.
void or_rotated(std::uint64_t* dst, const std::uint64_t* src, std::size_t n,
                std::size_t s) {
  const std::size_t words = (n + 63) / 64;
  // Left shift by s.
  const std::size_t ws = s / 64, bs = s % 64;
  for (std::size_t i = words; i-- > ws;) {
    std::uint64_t v = src[i - ws] << bs;
    if (bs && i - ws >= 1) v |= src[i - ws - 1] >> (64 - bs);
    dst[i] |= v;
  }
  if (n % 64) dst[words - 1] &= (std::uint64_t{1} << (n % 64)) - 1;
  // Wrapped part: bits [n - s, n) move to [0, s).
  if (s == 0) return;
  const std::size_t r = n - s;
  const std::size_t wr = r / 64, br = r % 64;
  for (std::size_t i = 0; i + wr < words; ++i) {
    std::uint64_t v = src[i + wr] >> br;
    if (br && i + wr + 1 < words) v |= src[i + wr + 1] << (64 - br);
    if (i * 64 >= s) break;
    if (s - i * 64 < 64) v &= (std::uint64_t{1} << (s - i * 64)) - 1;
    dst[i] |= v;
  }
}

class ExceptionSlot {
 public:
  void capture() {
    std::lock_guard lock(mu_);
    if (!first_) first_ = std::current_exception();
  }
  void rethrow() const {
    if (first_) std::rethrow_exception(first_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr first_;
};

Element apply(const Ring& r, Op op, Element x, Element y) {
  return op == Op::add ? r.add(x, y) : r.mul(x, y);
}

FiniteSet combine_dense(const FiniteSet& a, const FiniteSet& b, Op op,
                        const Limits& limits) {
  const Ring& ring = *a.ring();
  const std::size_t n = static_cast<std::size_t>(*ring.cardinality());
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> result(words, 0);
  const auto ea = a.elements();
  const auto eb = b.elements();
  const bool parallel = ea.size() * eb.size() >= kParallelWork;
  ExceptionSlot error;

  std::vector<std::uint64_t> b_bits;
  const bool rotate = op == Op::add && ring.cyclic_modulus().has_value();
  if (rotate) {
    if (b.representation() == Representation::dense) {
      b_bits.assign(b.bits().begin(), b.bits().end());
    } else {
      b_bits.assign(words, 0);
      for (Element y : eb)
        b_bits[static_cast<std::size_t>(y.code) / 64] |= std::uint64_t{1}
                                                         << (y.code % 64);
    }
  }

#pragma omp parallel if (parallel)
  {
    std::vector<std::uint64_t> local(words, 0);
#pragma omp for schedule(dynamic, 16)
    for (std::size_t i = 0; i < ea.size(); ++i) {
      try {
        if (rotate) {
          or_rotated(local.data(), b_bits.data(), n,
                     static_cast<std::size_t>(ea[i].code));
        } else {
          for (Element y : eb) {
            Element z = apply(ring, op, ea[i], y);
            local[static_cast<std::size_t>(z.code) / 64] |= std::uint64_t{1}
                                                            << (z.code % 64);
          }
        }
      } catch (...) {
        error.capture();
      }
    }
#pragma omp critical(apx_dense_reduce)
    for (std::size_t w = 0; w < words; ++w) result[w] |= local[w];
  }
  error.rethrow();

  std::uint64_t count = 0;
  for (auto w : result) count += static_cast<std::uint64_t>(std::popcount(w));
  if (count > limits.cardinality_cap) over_cap(limits.cardinality_cap);
  return FiniteSet::from_bits(a.ring(), std::move(result));
}

void sort_unique(std::vector<Element>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

FiniteSet combine_sparse(const FiniteSet& a, const FiniteSet& b, Op op,
                         const Limits& limits) {
  const Ring& ring = *a.ring();
  const auto ea = a.elements();
  const auto eb = b.elements();
  const bool parallel = ea.size() * eb.size() >= kParallelWork;
  const std::uint64_t cap = limits.cardinality_cap;
  const std::size_t compact_at =
      std::max<std::size_t>(std::size_t{1} << 16, static_cast<std::size_t>(
                                                      std::min<std::uint64_t>(cap, 1u << 24)) * 2);
  std::vector<std::vector<Element>> parts;
  ExceptionSlot error;
  std::atomic<bool> overflow{false};

#pragma omp parallel if (parallel)
  {
    std::vector<Element> local;
#pragma omp for schedule(dynamic, 16)
    for (std::size_t i = 0; i < ea.size(); ++i) {
      if (overflow) continue;
      try {
        for (Element y : eb) local.push_back(apply(ring, op, ea[i], y));
        if (local.size() > compact_at) {
          sort_unique(local);
          if (local.size() > cap) overflow = true;
        }
      } catch (...) {
        error.capture();
      }
    }
    sort_unique(local);
#pragma omp critical(apx_sparse_reduce)
    parts.push_back(std::move(local));
  }
  error.rethrow();
  if (overflow) over_cap(cap);

  std::vector<Element> merged;
  for (auto& p : parts) {
    std::vector<Element> next;
    next.reserve(merged.size() + p.size());
    std::set_union(merged.begin(), merged.end(), p.begin(), p.end(),
                   std::back_inserter(next));
    merged = std::move(next);
    if (merged.size() > cap) over_cap(cap);
  }
  return FiniteSet(a.ring(), std::move(merged), Representation::sparse);
}

}  // namespace

FiniteSet combine(const FiniteSet& a, const FiniteSet& b, Op op,
                  const Limits& limits) {
  require_same_ring(a, b);
  if (a.empty() || b.empty()) return FiniteSet(a.ring(), limits);
  if (choose_representation(*a.ring(), limits) == Representation::dense)
    return combine_dense(a, b, op, limits);
  return combine_sparse(a, b, op, limits);
}

FiniteSet map_elements(const FiniteSet& a, const std::function<Element(Element)>& f,
                       Representation repr) {
  std::vector<Element> out;
  out.reserve(a.size());
  for (Element x : a) out.push_back(f(x));
  return FiniteSet(a.ring(), std::move(out), repr);
}

}  // namespace apx::kernels
