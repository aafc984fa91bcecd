#include "unidisc/common.hpp"

#include <cstdio>
#include <string>
#include <thread>

namespace unidisc {

double chordal(Complex a, Complex b)
{
    return chordal_projective(a, 1.0, b, 1.0);
}

double chordal_projective(Complex a1, Complex a2, Complex b1, Complex b2)
{
    double na = std::sqrt(std::norm(a1) + std::norm(a2));
    double nb = std::sqrt(std::norm(b1) + std::norm(b2));
    return std::abs(a1 * b2 - a2 * b1) / (na * nb);
}

std::vector<double> map_indexed(size_t n, const std::function<double(size_t)>& fn, bool parallel)
{
    std::vector<double> out(n);
    unsigned nthreads = parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
    if (nthreads <= 1 || n < 2 * nthreads) {
        for (size_t i = 0; i < n; i++)
            out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(nthreads);
    size_t chunk = (n + nthreads - 1) / nthreads;
    for (unsigned t = 0; t < nthreads; t++) {
        size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi)
            break;
        workers.emplace_back([&, t, lo, hi]() {
            try {
                for (size_t i = lo; i < hi; i++)
                    out[i] = fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& w : workers)
        w.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

std::string fmt17(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace unidisc
