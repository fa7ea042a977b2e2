#pragma once

#include "apx/ring.hpp"

namespace apx {

// Table ring built from tables already known to satisfy the ring axioms
// (quotients and restrictions of verified rings). Skips the cubic checks.
RingHandle make_table_ring_unchecked(TableDesc table);

}  // namespace apx
