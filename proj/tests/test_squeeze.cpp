#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qdamp/squeeze.hpp"

using namespace qdamp;
using namespace qdamp::fock;
using namespace qdamp::squeeze;

TEST(SqueezeParam, OperatingRange) {
  EXPECT_THROW(SqueezeParam(10.5), std::invalid_argument);
  EXPECT_THROW(SqueezeParam(std::nan("")), std::invalid_argument);
  EXPECT_NO_THROW(SqueezeParam(-10.0));
  EXPECT_DOUBLE_EQ(SqueezeParam(std::log(2.0)).q(), 2.0);
}

TEST(SqueezeOperator, ZetaZeroIsIdentity) {
  const FockSpace space(20);
  EXPECT_EQ(squeeze_operator(space, 0.0).matrix(), Matrix::Identity(20, 20));
}

TEST(SqueezeOperator, RejectsTinySpaces) {
  EXPECT_THROW(squeeze_operator(FockSpace(3), 0.1), std::invalid_argument);
  EXPECT_NO_THROW(squeeze_operator(FockSpace(4), 0.1));
}

TEST(SqueezeOperator, UnitaryToTolerance) {
  for (double zeta : {-1.0, -0.3, 0.5, 1.0, 2.0}) {
    const Matrix s = squeeze_operator(FockSpace(48), zeta).matrix();
    EXPECT_LE((s.adjoint() * s - Matrix::Identity(48, 48)).cwiseAbs().maxCoeff(), 1e-10) << zeta;
  }
}

TEST(SqueezeOperator, AgreesWithTaylorOracle) {
  const FockSpace space(32);
  const auto [a, ad] = ladder_ops(space);
  for (double zeta : {0.3, -0.7}) {
    const Matrix gen = (a * a - ad * ad).matrix();
    const Matrix oracle_value = oracle::taylor_expm(zeta / 2 * gen);
    EXPECT_LE((squeeze_operator(space, zeta).matrix() - oracle_value).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(SqueezedVacuum, ClosedFormAmplitudes) {
  const FockSpace space(128);
  for (double zeta : {0.25, -0.5, 1.0}) {
    const auto psi = squeezed_vacuum(space, zeta);
    for (std::size_t n = 0; n < 16; ++n) {
      EXPECT_NEAR(psi(2 * n).real(), oracle::squeezed_vacuum_amplitude(n, zeta), 1e-10)
          << "zeta=" << zeta << " n=" << n;
      EXPECT_NEAR(std::abs(psi(2 * n + 1)), 0.0, 1e-14);
    }
  }
  EXPECT_NEAR(squeezed_vacuum(FockSpace(48), 1.0)(0).real(), 0.805018, 1e-6);
}

TEST(Dilation, Examples) {
  EXPECT_EQ(dilation_vs_squeeze(FockSpace(32), 0.0, 8), 0.0);
  EXPECT_LE(dilation_vs_squeeze(FockSpace(32), 0.5, 8), 1e-9);
  EXPECT_LE(dilation_vs_squeeze(FockSpace(32), -0.5, 8), 1e-9);
}

TEST(Dilation, ScaleGeneratorShiftsByHalfIdentity) {
  const FockSpace space(10);
  const Operator g = scale_generator(space);
  const Operator expected = cplx(0.5) * (squeeze_generator(space) - Operator::identity(space));
  EXPECT_EQ(g.matrix(), expected.matrix());
}

TEST(Bogoliubov, Examples) {
  EXPECT_LE(bogoliubov_residual(FockSpace(48), 0.0, bogoliubov_margin(0.0)), 1e-14);
  EXPECT_LE(bogoliubov_residual(FockSpace(48), 0.3, bogoliubov_margin(0.3)), 1e-8);
  const auto c = bogoliubov_coefficients(0.7);
  EXPECT_NEAR(c.u * c.u - c.v * c.v, 1.0, 1e-14);
}

TEST(Bogoliubov, PaddedConjugationOracle) {
  // Independent route: Taylor-series S on a generously padded space, conjugate,
  // and read off the leading block.
  const double zeta = 0.3;
  const std::size_t w = 128;
  const std::size_t keep = 40;
  const Matrix a = oracle::lowering(w);
  const Matrix ad = a.adjoint();
  const Matrix gen = a * a - ad * ad;
  const Matrix s = oracle::taylor_expm(zeta / 2 * gen);
  const Matrix s_inv = oracle::taylor_expm(-zeta / 2 * gen);
  const Matrix lhs = s_inv * a * s;
  const Matrix rhs = a * std::cosh(zeta) - ad * std::sinh(zeta);
  const auto k = static_cast<Eigen::Index>(keep);
  EXPECT_LE((lhs - rhs).topLeftCorner(k, k).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Bogoliubov, CcrPreserved) {
  for (double zeta : {-1.0, 0.25, 1.0}) {
    EXPECT_LE(bogoliubov_ccr_residual(FockSpace(48), zeta, bogoliubov_margin(zeta)), 1e-8);
  }
}

TEST(Bogoliubov, WorkingDimensionGrowsAndIsCapped) {
  EXPECT_GE(working_dim(48, 0.0), 48u);
  EXPECT_LT(working_dim(48, 0.25), working_dim(48, 1.0));
  EXPECT_EQ(working_dim(48, 1.0) % 16, 0u);
  EXPECT_THROW(working_dim(48, 3.0), DimensionCapError);
}

TEST(Su11, SingleModeClosures) {
  const auto r = su11_single_mode(FockSpace(16), 3);
  EXPECT_GE(r.records().size(), 4u);
  for (const auto& rec : r.records()) {
    EXPECT_LE(rec.residual, 1e-12) << rec.name;
    EXPECT_TRUE(rec.passed()) << rec.name;
  }
}

TEST(Su11, GeneratorsMatchDefinitions) {
  const FockSpace space(8);
  const auto [a, ad] = ladder_ops(space);
  const auto k = su11_generators(space);
  EXPECT_EQ(k.k_minus.matrix(), (cplx(0.5) * (a * a)).matrix());
  EXPECT_EQ(k.k_plus.matrix(), (cplx(0.5) * (ad * ad)).matrix());
  EXPECT_EQ(k.k_z(3, 3), cplx(0.5 * (3 + 0.5)));
}

TEST(DampedAmplitude, Examples) {
  EXPECT_EQ(damped_amplitude({2.0, -1.0}, 0.7, 0.0), std::complex<double>(2.0, -1.0));
  EXPECT_NEAR(damped_amplitude(3.0, 1.0, std::log(2.0)).real(), 1.5, 1e-15);
  const auto z = damped_amplitude({1.0, 1.0}, 0.25, 4.0);
  EXPECT_NEAR(z.real(), 0.367879, 1e-6);
  EXPECT_NEAR(z.imag(), 0.367879, 1e-6);
  EXPECT_NEAR(z.real(), std::exp(-1.0), 1e-15);
  EXPECT_THROW(damped_amplitude(1.0, -0.1, 1.0), std::invalid_argument);
  EXPECT_THROW(damped_amplitude(1.0, 0.1, -1.0), std::invalid_argument);
}

// --- properties ---------------------------------------------------------------

TEST(SqueezeProperty, InverseIsNegatedParameter) {
  oracle::Gen gen(31);
  const FockSpace space(40);
  for (int trial = 0; trial < 8; ++trial) {
    const double zeta = gen.real(-1.5, 1.5);
    const Operator s = squeeze_operator(space, zeta);
    EXPECT_LE((s.adjoint().matrix() - squeeze_operator(space, -zeta).matrix()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE(max_abs(s * squeeze_operator(space, -zeta) - Operator::identity(space)), 1e-12);
  }
}

TEST(SqueezeProperty, OneParameterGroupOnInterior) {
  oracle::Gen gen(32);
  const FockSpace space(48);
  for (int trial = 0; trial < 6; ++trial) {
    const double x = gen.real(-0.5, 0.5);
    const double y = gen.real(-0.5, 0.5);
    const Operator lhs = squeeze_operator(space, x) * squeeze_operator(space, y);
    // Products pick up truncation error from the edge; compare well inside.
    EXPECT_LE(interior_residual(lhs, squeeze_operator(space, x + y), 24), 1e-9);
  }
}

TEST(SqueezeProperty, DilationMatchesSqueezeWithPolicyMargin) {
  oracle::Gen gen(33);
  for (int trial = 0; trial < 8; ++trial) {
    const double zeta = gen.real(-1.0, 1.0);
    EXPECT_LE(dilation_vs_squeeze(FockSpace(32), zeta, policy_margin(std::abs(zeta), 2)), 1e-9) << zeta;
  }
}

TEST(SqueezeProperty, SqueezedVacuumIsNormalizedAndEven) {
  oracle::Gen gen(34);
  const FockSpace space(64);
  for (int trial = 0; trial < 8; ++trial) {
    const double zeta = gen.real(-1.0, 1.0);
    const auto psi = squeezed_vacuum(space, zeta);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-10);
    for (std::size_t n = 1; n < 64; n += 2) EXPECT_NEAR(std::abs(psi(n)), 0.0, 1e-14);
  }
}
