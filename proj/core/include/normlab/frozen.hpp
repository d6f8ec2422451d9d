#pragma once

/// Constants fixed once by the `calibrate` sweep and the pilot runs. Each
/// calibrated bound is the sweep maximum times 1.1, except the Duhamel
/// tolerance, which is ten times the measured residual. Tests and experiments
/// assert against these values and never re-fit them.
namespace normlab::frozen {

/// |Delta_q f|_{L^b} <= C 2^{qd(1/a-1/b)} |Delta_q f|_{L^a}, (a, b) in {(2,4), (2,inf), (4,inf)}.
inline constexpr double kBernstein = 0.9052480029949701;
/// |f|_{L^inf} <= C |f|_{B^{1/2}_{4,1}} on 2D fields.
inline constexpr double kEmbedding = 0.544229513938329;
/// |[R,Phi] w|_{B^{1/2}_{4,1}} <= C M |w|_{B^{1/2}_{4,1}}, R = R_2^2.
inline constexpr double kCommutatorBesov = 0.6156401691735571;
/// |[R,Phi] w|_{L^p} <= C p M |w|_{L^p} for p in {2, 8, 32}.
inline constexpr double kCommutatorLp = 0.28122227939174016;
/// |f(t)|_B <= |f0|_B exp(C t |u|_Lip) for the forced transport equation.
inline constexpr double kBesovGrowth = 0.44315288711899203;
/// Constant in the lower bound |f(t)|_inf >= |tRf0 + f0|_inf - C t^2 (...) |f0|_B.
inline constexpr double kLowerBound = 0.9767209387164489;
/// Duhamel residual tolerance for the cellular benchmark (512^2, t = 0.25, dt = 1e-3).
inline constexpr double kDuhamelTolerance = 7.015243086540957e-10;
/// max over N of |g_N|_{B^{1/2}_{4,1}} / N on the assumption-1 scan.
inline constexpr double kGNBesovPerN = 1.9839791410460899;

}  // namespace normlab::frozen
