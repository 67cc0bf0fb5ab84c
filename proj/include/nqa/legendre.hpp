#pragma once

#include <span>
#include <vector>

namespace nqa {

/// Legendre polynomial P_L(x) by upward recurrence.
double legendre_p(int L, double x);

/// Legendre function of the second kind Q_L(y) for y > 1.
///
/// Throws DomainError for y <= 1 or L < 0.
double legendre_q(int L, double y);

/// Q_0 ... Q_{out.size()-1} at y, with y - 1 supplied separately so that
/// arguments close to the logarithmic branch point keep full precision.
///
/// Close to y = 1 the values come from upward recurrence, which is stable
/// there; elsewhere a Miller-type downward recurrence normalized to the
/// closed form of Q_0 is used, since upward recurrence loses digits at
/// roughly exp(2 L acosh y).
void legendre_q_all(double y, double y_minus_1, std::span<double> out);

std::vector<double> legendre_q_all(int L_max, double y);

} // namespace nqa
