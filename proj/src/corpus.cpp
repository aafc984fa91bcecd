#include "unidisc/corpus.hpp"

#include <cmath>

namespace unidisc {

namespace {

std::vector<CorpusEntry> build_corpus()
{
    const Complex i(0.0, 1.0);
    FunctionExpr z = FunctionExpr::variable();

    // infimum of |c|/(1 + |c|^2 r^2) over r < 1
    auto scaling_eps = [](double c) { return c / (1.0 + c * c); };

    std::vector<CorpusEntry> entries;
    entries.push_back({"identity", z, 0.5, "f# = 1/(1+|z|^2), infimum at the boundary"});
    entries.push_back({"reciprocal", mobius(0, 1, 1, 0), 0.5, "1/z: same f# as the identity, pole at 0"});
    entries.push_back({"scale_half", Complex(0.5) * z, scaling_eps(0.5), "f# = c/(1+c^2|z|^2)"});
    entries.push_back({"scale_i", i * z, 0.5, "|c| = 1 scaling, a sphere rotation"});
    entries.push_back({"scale_two", Complex(2.0) * z, scaling_eps(2.0), "f# = c/(1+c^2|z|^2)"});
    entries.push_back({"rotation_a", unitary_rotation(0.6, 0.8 * i), 0.5, "rigid sphere rotation"});
    entries.push_back({"rotation_b",
                       unitary_rotation(std::polar(1.0 / std::sqrt(2.0), M_PI / 4.0),
                                        std::polar(1.0 / std::sqrt(2.0), -M_PI / 6.0)),
                       0.5, "rigid sphere rotation, generic phases"});
    entries.push_back({"exp_unit", exp(z), 1.0 / (2.0 * std::cosh(1.0)),
                       "f# = 1/(2 cosh x), infimum at x -> +-1"});
    entries.push_back({"exp_two_i", exp(2.0 * i * z), 1.0 / std::cosh(2.0),
                       "f# = 1/cosh(2y), infimum at y -> +-1"});
    entries.push_back({"hille_03", hille(0.3), 0.3 / (2.0 * std::cosh(M_PI * 0.15)),
                       "lambda/(2 cosh(pi lambda/2)), infimum at z -> +-i"});
    entries.push_back({"hille_0764", hille(0.7637), 0.7637 / (2.0 * std::cosh(M_PI * 0.38185)),
                       "near the family maximum"});
    entries.push_back({"hille_15", hille(1.5), 1.5 / (2.0 * std::cosh(M_PI * 0.75)),
                       "lambda/(2 cosh(pi lambda/2)), infimum at z -> +-i"});
    entries.push_back({"mobius_pole", mobius(1, 0, 1, -0.5), 0.5 / 3.25,
                       "z/(z - 0.5): f# = |det|/(|z|^2 + |z-0.5|^2), interior pole"});
    entries.push_back({"rotation_post_hille",
                       unitary_rotation(0.6, 0.8 * i).substitute(hille(0.7637)),
                       0.7637 / (2.0 * std::cosh(M_PI * 0.38185)),
                       "rotation of the sphere leaves f# untouched"});
    entries.push_back({"mobius_post_exp", mobius(1, 0.2, 0.2, 1).substitute(exp(z)), std::nullopt,
                       "non-rigid post-composition; epsilon measured on a grid"});
    entries.push_back({"hille_pre_mobius", hille(1).substitute(mobius(1, -0.3, -0.3, 1)),
                       std::nullopt, "disc automorphism precomposition; epsilon measured"});
    entries.push_back({"exp_pre_mobius", exp(z).substitute(mobius(1, -0.3, -0.3, 1)), std::nullopt,
                       "disc automorphism precomposition; epsilon measured"});
    return entries;
}

}  // namespace

const std::vector<CorpusEntry>& corpus()
{
    static const std::vector<CorpusEntry> entries = build_corpus();
    return entries;
}

const CorpusEntry* corpus_find(std::string_view name)
{
    for (const CorpusEntry& e : corpus())
        if (e.name == name)
            return &e;
    return nullptr;
}

GridSpec default_epsilon_grid()
{
    GridSpec g;
    g.r_max = 0.999;
    g.n_radial = 120;
    g.n_angular = 96;
    g.boundary_refinement = true;
    return g;
}

EpsilonEstimate corpus_epsilon(const CorpusEntry& entry, const GridSpec& measure_grid, bool parallel)
{
    if (entry.analytic_eps) {
        // representative boundary minimizer hints for the closed-form families
        Complex hint(1.0, 0.0);
        if (entry.name.rfind("hille", 0) == 0 || entry.name == "rotation_post_hille" ||
            entry.name == "exp_two_i")
            hint = Complex(0.0, 1.0);
        if (entry.name == "mobius_pole")
            hint = Complex(-1.0, 0.0);
        return EpsilonEstimate::analytic(*entry.analytic_eps, hint);
    }
    return inf_spherical(entry.expr, measure_grid, parallel);
}

}  // namespace unidisc
