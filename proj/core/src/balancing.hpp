#pragma once

#include "robsyn/types.hpp"

namespace robsyn::detail {

/// Parlett-Reinsch balancing with radix-2 scale factors: H <- D^{-1} H D.
/// Returns the diagonal of D.  Eigenvalues are untouched; invariant-subspace
/// bases transform by D.
Vector balance_in_place(Matrix& H);

}  // namespace robsyn::detail
