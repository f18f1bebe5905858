#include "interfere/coherence.hpp"

#include <array>
#include <cmath>
#include <string>

#include "interfere/oracle.hpp"

namespace interfere {

namespace {

void check_index(const DensityMatrix& rho, std::size_t i)
{
    if (i >= rho.size())
        throw IndexError("mode index " + std::to_string(i) + " out of range for N = " + std::to_string(rho.size()));
}

double populated(const DensityMatrix& rho, std::size_t i)
{
    double p = rho.population(i);
    if (!(p > tol::kZeroPopulation))
        throw UndefinedPairError("mode " + std::to_string(i) + " is unpopulated; coherence is undefined");
    return p;
}

}  // namespace

Complex big_g1(const DensityMatrix& rho, std::size_t i, std::size_t j, const FieldScale& k)
{
    check_index(rho, i);
    check_index(rho, j);
    require_valid(rho);
    return k.norm() * rho(j, i);
}

Complex g1(const DensityMatrix& rho, std::size_t i, std::size_t j)
{
    check_index(rho, i);
    check_index(rho, j);
    require_valid(rho);
    double pi = populated(rho, i);
    double pj = populated(rho, j);
    if (i == j)
        return {1.0, 0.0};
    return rho(j, i) / std::sqrt(pi * pj);
}

CoherenceMatrix coherence_matrix(const DensityMatrix& rho)
{
    require_valid(rho);
    const std::size_t n = rho.size();
    CoherenceMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double pi = rho.population(i), pj = rho.population(j);
            if (pi > tol::kZeroPopulation && pj > tol::kZeroPopulation)
                out.set(i, j, i == j ? Complex(1.0, 0.0) : rho(j, i) / std::sqrt(pi * pj));
        }
    }
    return out;
}

Complex g2(const DensityMatrix& rho, std::size_t i, std::size_t j)
{
    check_index(rho, i);
    check_index(rho, j);
    CMatrix full = oracle::embed(rho);
    double norm = std::sqrt(populated(rho, i) * populated(rho, j));

    oracle::FockSpace space(rho.modes());
    std::array ops{space.creation(i), space.creation(j), space.annihilation(j), space.annihilation(i)};
    return oracle::trace_correlation(full, ops) / norm;
}

Complex g3(const DensityMatrix& rho, std::size_t i, std::size_t j, std::size_t l)
{
    check_index(rho, i);
    check_index(rho, j);
    check_index(rho, l);
    CMatrix full = oracle::embed(rho);
    double norm = std::sqrt(populated(rho, i) * populated(rho, j) * populated(rho, l));

    oracle::FockSpace space(rho.modes());
    std::array ops{space.creation(i), space.creation(j), space.creation(l),
                   space.annihilation(l), space.annihilation(j), space.annihilation(i)};
    return oracle::trace_correlation(full, ops) / norm;
}

}  // namespace interfere
