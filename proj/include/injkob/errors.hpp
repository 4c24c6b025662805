#pragma once

#include <stdexcept>
#include <string>

namespace injkob {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Point outside the map's domain (|z| >= 1, Im z <= 0, outside B^2 / H_2, ...).
struct DomainError : Error { using Error::Error; };
// Fractional-linear denominator vanishes (to tolerance) at the argument.
struct PoleError : Error { using Error::Error; };
// Mixing disk- and half-plane-model values (or ball and Siegel).
struct ModelMismatch : Error { using Error::Error; };
// Operation requires a specific conjugacy class.
struct WrongClass : Error { using Error::Error; };
// multiplier() called at a point that is not fixed.
struct NotFixed : Error { using Error::Error; };
// fixed_points() of the identity.
struct IdentityInput : Error { using Error::Error; };
// Parameter outside its admissible range.
struct RangeError : Error { using Error::Error; };
// Disc variant not supported by the operation.
struct VariantError : Error { using Error::Error; };
// Rotation angle congruent to 0 mod 2pi where a nonzero rotation is needed.
struct DegenerateRotation : Error { using Error::Error; };
// graph_intersection() of two coincident maps.
struct CoincidentMaps : Error { using Error::Error; };
// geodesic_aligner() with equal endpoints.
struct CoincidentPoints : Error { using Error::Error; };
// transversality() at a point not on both discs.
struct NotOnDisc : Error { using Error::Error; };
// Enumeration/search budget exhausted.
struct BudgetExceeded : Error { using Error::Error; };
// eta_solve() target below the s = 0 displacement.
struct TargetTooSmall : Error { using Error::Error; };
// Bidisk pair normalization fed an identity factor (or equal maps).
struct DegenerateInput : Error { using Error::Error; };
// bidisk_extremal() with a vertical or horizontal direction.
struct DegenerateDirection : Error { using Error::Error; };
// classify2() with eigenstructure too close to degenerate to decide.
struct ToleranceAmbiguity : Error { using Error::Error; };
// Malformed CLI / JSON input.
struct ParseError : Error { using Error::Error; };

} // namespace injkob
