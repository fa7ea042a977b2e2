#pragma once

#include <string>
#include <vector>

#include "apx/error.hpp"
#include "apx/finite_set.hpp"
#include "apx/ring.hpp"
#include "doctest.h"

namespace testing {

inline apx::FiniteSet set_of(const apx::RingHandle& r, const std::string& literal) {
  return apx::parse_set_literal(r, literal);
}

inline apx::FiniteSet range(const apx::RingHandle& r, long lo, long hi) {
  std::vector<apx::Element> e;
  for (long i = lo; i <= hi; ++i) e.push_back(r->parse_element(std::to_string(i)));
  return apx::FiniteSet(r, e);
}

template <typename F>
apx::ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const apx::Error& e) {
    return e.kind();
  }
  FAIL("expected an apx::Error");
  return apx::ErrorKind::io;
}

}  // namespace testing
