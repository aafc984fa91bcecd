#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace unidisc {

using Complex = std::complex<double>;

inline bool is_finite(Complex v)
{
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

/// chordal (Riemann-sphere) distance between two finite points
double chordal(Complex a, Complex b);

/// chordal distance between the projective points (a1:a2) and (b1:b2);
/// handles the point at infinity as (1:0)
double chordal_projective(Complex a1, Complex a2, Complex b1, Complex b2);

/// deterministic 64-bit generator (splitmix64 update), used wherever the
/// toolkit needs reproducible random samples
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next()
    {
        state += 0x9e3779b97f4a7c15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// uniform in [0, 1)
    double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// area-uniform point of the closed disc |z| <= r_max
    Complex disc_point(double r_max)
    {
        double r = r_max * std::sqrt(uniform01());
        double theta = 2.0 * M_PI * uniform01();
        return Complex(r * std::cos(theta), r * std::sin(theta));
    }

private:
    uint64_t state;
};

/// evaluate fn(i) for i in [0, n) into a vector; runs chunked over hardware
/// threads when parallel is set, reduction order stays index-deterministic
std::vector<double> map_indexed(size_t n, const std::function<double(size_t)>& fn, bool parallel);

/// printf-style %.17g rendering used by every CSV writer
std::string fmt17(double x);

}  // namespace unidisc
