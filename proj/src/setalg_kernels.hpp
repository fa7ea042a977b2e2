#pragma once

#include <functional>

#include "apx/finite_set.hpp"

namespace apx::kernels {

enum class Op { add, mul };

// {op(x, y) : x in a, y in b}; representation chosen from `limits`.
FiniteSet combine(const FiniteSet& a, const FiniteSet& b, Op op,
                  const Limits& limits);

FiniteSet map_elements(const FiniteSet& a,
                       const std::function<Element(Element)>& f,
                       Representation repr);

}  // namespace apx::kernels
