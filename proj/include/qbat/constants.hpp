#pragma once

// Centralized numerical tolerances. Values are part of the library contract:
// tests and file-format validation both use these.
namespace qbat::tol {

inline constexpr double kHermiticity = 1e-10;   // ||M - M^dag||_inf ceiling
inline constexpr double kTrace = 1e-10;         // |tr(rho) - 1| ceiling
inline constexpr double kPsdFloor = -1e-9;      // smallest admissible eigenvalue
inline constexpr double kPartialTraceZero = 1e-9;  // tr_a[V], tr_b[V] residual
inline constexpr double kGpoTraceless = 1e-12;
inline constexpr double kGpoOrthogonality = 1e-10;
inline constexpr double kBlochRoundTrip = 1e-10;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kDetSignZero = 1e-12;   // relative threshold for det sign
inline constexpr double kLmm = 1e-9;            // marginal distance from 1/d
inline constexpr double kNullLocal = 1e-12;     // ||h_a||, ||h_b|| ceiling

inline constexpr double kSimplexDiameter = 1e-9;
inline constexpr int kSimplexMaxIter = 5000;
inline constexpr int kDefaultRestarts = 16;

inline constexpr double kDetectionMargin = 1e-6;  // witness detection margin

}  // namespace qbat::tol
