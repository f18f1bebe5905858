#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "interfere/core.hpp"
#include "interfere/density.hpp"
#include "random_states.hpp"

using namespace interfere;

namespace {

CMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows)
{
    CMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
    Eigen::Index i = 0;
    for (auto row : rows) {
        Eigen::Index j = 0;
        for (double v : row)
            m(i, j++) = v;
        ++i;
    }
    return m;
}

}  // namespace

TEST(ValidateDensity, DiagonalStateIsValid)
{
    ValidationReport r = validate_density(real_matrix({{0.5, 0.0}, {0.0, 0.5}}));
    EXPECT_TRUE(r.ok);
    EXPECT_TRUE(r.hermitian);
    EXPECT_NEAR(r.min_eig, 0.5, 1e-15);
    EXPECT_NEAR(r.trace_dev, 0.0, 1e-15);
}

TEST(ValidateDensity, CoherenceAboveGeometricMeanIsNotPsd)
{
    ValidationReport r = validate_density(real_matrix({{0.5, 0.7}, {0.7, 0.5}}));
    EXPECT_FALSE(r.ok);
    EXPECT_TRUE(r.hermitian);
    EXPECT_NEAR(r.min_eig, -0.2, 1e-12);
}

TEST(ValidateDensity, WrongTraceIsRejected)
{
    ValidationReport r = validate_density(real_matrix({{0.6, 0.0}, {0.0, 0.5}}));
    EXPECT_FALSE(r.ok);
    EXPECT_NEAR(r.trace_dev, 0.1, 1e-12);
}

TEST(ValidateDensity, NonHermitianIsRejected)
{
    CMatrix m = real_matrix({{0.5, 0.1}, {0.2, 0.5}});
    ValidationReport r = validate_density(m);
    EXPECT_FALSE(r.hermitian);
    EXPECT_FALSE(r.ok);
    EXPECT_NEAR(r.hermitian_dev, 0.1, 1e-15);
}

TEST(ValidateDensity, DimensionErrors)
{
    EXPECT_THROW(validate_density(CMatrix::Identity(2, 3)), DimensionError);
    EXPECT_THROW(validate_density(CMatrix::Identity(1, 1)), DimensionError);
    EXPECT_THROW(require_valid(DensityMatrix(real_matrix({{0.6, 0.0}, {0.0, 0.5}}))), ValidationError);
}

TEST(ValidateDensity, ToleranceIsConfigurable)
{
    CMatrix m = real_matrix({{0.5 + 1e-7, 0.0}, {0.0, 0.5}});
    EXPECT_FALSE(validate_density(m).ok);
    ValidationTolerances loose;
    loose.trace = 1e-6;
    EXPECT_TRUE(validate_density(m, loose).ok);
}

TEST(CoreTypes, ConstructionInvariants)
{
    EXPECT_THROW(ModeCount(1), DimensionError);
    EXPECT_EQ(ModeCount(5).pairs(), 10u);
    EXPECT_THROW(Amplitudes(CVector::Constant(2, Complex(1.0, 0.0))), NormalizationError);
    EXPECT_THROW(Amplitudes::normalized(CVector::Zero(3)), NormalizationError);
    EXPECT_NO_THROW(Amplitudes::normalized(CVector::Constant(3, Complex(2.0, 1.0))));
    EXPECT_THROW(EmissionModel(sample::equal_amplitudes(2), 1.5), DomainError);
    EXPECT_THROW(EmissionModel(sample::equal_amplitudes(2), -0.1), DomainError);
    EXPECT_THROW(PhaseConfig({0.0, std::nan("")}), DomainError);
    EXPECT_THROW(FieldScale(Complex(0.0, 0.0)), DomainError);
    EXPECT_DOUBLE_EQ(FieldScale().norm(), 1.0);
}

// Every mixture of a valid model is a valid state, with or without a global
// phase on the amplitudes.
TEST(ValidateDensityProperty, AcceptsMixturesAndIsGaugeInsensitive)
{
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n = sample::uniform_index(rng, 2, 8);
        EmissionModel model = sample::random_model(rng, n, 0.0);
        ValidationReport plain = validate_density(mix(model));
        ASSERT_TRUE(plain.ok) << "trial " << trial << ": " << describe(plain);

        Complex phase = std::polar(1.0, sample::uniform(rng, 0.0, 6.283185307179586));
        EmissionModel rotated(Amplitudes(model.amplitudes().values() * phase), model.p_id());
        ValidationReport shifted = validate_density(mix(rotated));
        ASSERT_TRUE(shifted.ok);
        EXPECT_NEAR(shifted.min_eig, plain.min_eig, 1e-12);
        EXPECT_NEAR(shifted.trace_dev, plain.trace_dev, 1e-12);
    }
}

TEST(ValidateDensityProperty, AcceptsRandomStates)
{
    std::mt19937_64 rng(102);
    for (int trial = 0; trial < 1000; ++trial) {
        DensityMatrix rho = sample::random_density(rng, sample::uniform_index(rng, 2, 8));
        ASSERT_TRUE(validate_density(rho).ok) << describe(validate_density(rho));
    }
}
