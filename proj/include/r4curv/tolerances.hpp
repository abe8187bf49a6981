#pragma once

namespace r4curv {

// Every numeric gate in one place; the CLI exposes each field as --tol-<name>.
struct ToleranceSet {
    double regularity = 1e-10;    // minimum EG - F^2, relative to EG
    double inflection = 1e-7;     // max(|Delta|, |kN|) for inflection points
    double minimal = 1e-7;        // |H| for minimal points
    double semiumbilic = 1e-7;    // |kN| for semiumbilic points
    double ellipse_kind = 1e-7;   // segment/circle/point thresholds
    double degenerate_eq = 1e-9;  // direction equation coefficients, scale relative
    double orthogonality = 1e-8;  // asymptotic pair normalized inner product
    double k_normal = 1e-8;       // max |kN| for the vanishing check
    double umbilicity = 1e-8;     // residual of II_nu - lambda I
    double coincidence = 1e-6;    // angular gap between direction families, radians
    double factorization = 1e-8;  // quartic versus product, unit-vector cross norm
    double projection = 1e-8;     // spread of lambda around its median
    double codazzi = 1e-6;        // compatibility residual at step 1e-5
    double sphere_fit = 1e-8;     // rms distance to the fitted hypersphere
    double lambda_floor = 1e-9;   // below this, lambda counts as vanishing
};

} // namespace r4curv
