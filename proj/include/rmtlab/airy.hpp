#pragma once

namespace rmtlab {

inline constexpr double kAiryMin = -15.0;
inline constexpr double kAiryMax = 30.0;

struct AiryPair {
    double ai = 0.0;
    double aip = 0.0;
};

// Ai and Ai' from (1/2pi) int exp(i(xz + z^3/3)) dz along a horizontal line in
// the upper half plane. Throws std::out_of_range outside [kAiryMin, kAiryMax].
AiryPair airy_pair(double x);
double airy(double x);
double airy_prime(double x);

// Airy kernel; arguments above kAiryMax contribute nothing.
double airy_kernel(double x, double y);
// int_0^inf Ai(x+t) Ai(y+t) dt by quadrature.
double airy_kernel_integral(double x, double y);

}  // namespace rmtlab
