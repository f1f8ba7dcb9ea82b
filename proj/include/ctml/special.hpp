#pragma once

namespace ctml {

/// Regularized incomplete beta function I_x(a, b), relative tolerance 1e-10.
double ibeta(double a, double b, double x);

/// Two-sided tail probability P(|T_df| >= |t|) of Student's t.
double student_t_two_sided(double t, double df);

/// Upper tail P(T_df >= t).
double student_t_sf(double t, double df);

}  // namespace ctml
