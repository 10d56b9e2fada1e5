#pragma once

// Centralized numeric tolerances. Everything else in the library refers to
// these; do not scatter ad-hoc epsilons through algorithm code.
namespace drsubmax::tol {

// Coordinate clamp: Vec01 accepts coordinates within this distance of [0,1]
// and snaps them onto the box; anything further out is a hard error.
inline constexpr double kCoordClamp = 1e-12;

// Inequality slack for invariants and bound verification.
inline constexpr double kInvariant = 1e-9;

// Simplex feasibility / optimality tolerances.
inline constexpr double kLpFeas = 1e-9;
inline constexpr double kLpOpt = 1e-9;

// Membership tolerance used when validating solutions produced by solvers.
inline constexpr double kMembership = 1e-7;

}  // namespace drsubmax::tol
