#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qdamp/dissipative.hpp"

using namespace qdamp;
using namespace qdamp::dissipative;
using fock::cplx;
using fock::Matrix;
using fock::Operator;

namespace {

std::vector<ModeSpec> identical_modes(std::size_t m, double gamma = 1.0) {
  return std::vector<ModeSpec>(m, ModeSpec{"k", 1.0, gamma});
}

void expect_all_pass(const VerificationReport& r) {
  for (const auto& rec : r.records()) {
    if (rec.status == CheckStatus::kSkipped) continue;
    EXPECT_TRUE(rec.passed()) << rec.name << " residual " << rec.residual << " tol " << rec.tolerance;
  }
}

}  // namespace

TEST(Modes, Validation) {
  EXPECT_THROW(validate_modes({}), std::invalid_argument);
  EXPECT_THROW(validate_modes({{"k", 1.0, -0.1}}), std::invalid_argument);
  EXPECT_THROW(validate_modes({{"k", -1.0, 0.1}}), std::invalid_argument);
  EXPECT_THROW(validate_modes({{"k", 1.0, std::nan("")}}), std::invalid_argument);
  EXPECT_NO_THROW(validate_modes({{"k", 0.0, 0.0}}));
}

TEST(GroundState, Examples) {
  const auto vac = ground_state(1.0, 0.0, 5);
  EXPECT_EQ(vac.coeffs()[0], 1.0);
  for (std::size_t n = 1; n < 5; ++n) EXPECT_EQ(vac.coeffs()[n], 0.0);

  const auto gs = ground_state(1.0, 1.0, 200);
  EXPECT_NEAR(gs.coeffs()[0], 0.648054, 1e-6);
  EXPECT_NEAR(gs.coeffs()[1], 0.493554, 1e-6);
  EXPECT_NEAR(gs.coeffs()[0], 1.0 / std::cosh(1.0), 1e-15);
  EXPECT_NEAR(gs.norm_squared(), 1.0, gs.tail_bound() + 1e-15);
}

TEST(GroundState, MatchesScalarOracle) {
  for (double gt : {0.1, 0.5, 1.0, 2.0}) {
    const auto gs = ground_state(0.5, 2 * gt, 40);
    EXPECT_DOUBLE_EQ(gs.gamma_t(), gt);
    for (std::size_t n = 0; n < 40; ++n) {
      EXPECT_NEAR(gs.coeffs()[n], oracle::paired_coefficient(n, gt), 1e-15);
    }
  }
}

TEST(GroundState, TailPolicy) {
  EXPECT_EQ(minimal_dim(0.0, 1e-12), 1u);
  const std::size_t d = minimal_dim(1.0, 1e-8);
  EXPECT_LE(std::pow(std::tanh(1.0), 2.0 * d), 1e-8);
  EXPECT_GT(std::pow(std::tanh(1.0), 2.0 * (d - 1)), 1e-8);
  try {
    ground_state(1.0, 1.0, 10, 1e-8);
    FAIL() << "expected TailBoundError";
  } catch (const TailBoundError& e) {
    EXPECT_EQ(e.minimal_dim(), d);
  }
  EXPECT_NO_THROW(ground_state(1.0, 1.0, d, 1e-8));
  EXPECT_THROW(ground_state(1.0, -1.0, 10), std::invalid_argument);
  EXPECT_THROW(ground_state(1.0, 1.0, 0), std::invalid_argument);
}

TEST(ModeNumber, Examples) {
  EXPECT_EQ(mode_number(1.0, 0.0), 0.0);
  EXPECT_NEAR(mode_number(1.0, 1.0), 1.381098, 1e-6);
  EXPECT_NEAR(mode_number(1.0, 2.0), 13.154116, 1e-6);
}

TEST(ModeNumber, BruteForceSum) {
  for (double gt : {1.0, 2.0}) {
    double sum = 0.0;
    for (std::size_t n = 0; n < 2000; ++n) {
      const double c = oracle::paired_coefficient(n, gt);
      sum += n * c * c;
    }
    EXPECT_NEAR(mode_number(1.0, gt), sum, 1e-11 * sum);
    EXPECT_NEAR(ground_state(1.0, gt, 2000).mean_number(), sum, 1e-11 * sum);
  }
}

TEST(VacuumOverlap, Examples) {
  EXPECT_EQ(vacuum_overlap(identical_modes(3), 0.0), 1.0);
  EXPECT_NEAR(vacuum_overlap(identical_modes(1), 1.0), 0.648054, 1e-6);
  const double one = vacuum_overlap(identical_modes(1), 1.0);
  EXPECT_NEAR(vacuum_overlap(identical_modes(10), 1.0), std::pow(one, 10), 1e-16);
  EXPECT_NEAR(vacuum_overlap(identical_modes(10), 1.0), 0.0130651, 1e-6);
  const auto gs = ground_state(1.0, 1.0, 400);
  EXPECT_NEAR(paired_overlap(gs, ground_state(1.0, 0.0, 400)), vacuum_overlap(identical_modes(1), 1.0), 1e-10);
}

TEST(VacuumOverlap, LargeArgumentsDoNotOverflow) {
  EXPECT_NEAR(log_cosh(1000.0), 1000.0 - std::log(2.0), 1e-12);
  EXPECT_EQ(vacuum_overlap(identical_modes(1), 1000.0), 0.0);
  EXPECT_NEAR(log_cosh(0.5), std::log(std::cosh(0.5)), 1e-16);
}

TEST(OverlapTwoTimes, Examples) {
  EXPECT_EQ(overlap_two_times(identical_modes(4), 1.3, 1.3), 1.0);
  EXPECT_NEAR(overlap_two_times(identical_modes(1), 2.0, 1.0), 0.648054, 1e-6);
  EXPECT_NEAR(overlap_two_times_series(1.0, 2.0, 1.0, 200), 1.0 / std::cosh(1.0), 1e-12);
  const double one = overlap_two_times(identical_modes(1), 2.0, 1.0);
  double prev = 1.0;
  for (std::size_t m = 1; m <= 64; ++m) {
    const double v = overlap_two_times(identical_modes(m), 2.0, 1.0);
    EXPECT_NEAR(std::log(v), m * std::log(one), 1e-12);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(TwoModeSpace, IndexConventionAndCap) {
  const TwoModeSpace space(4);
  EXPECT_EQ(space.index(2, 3), 11u);
  EXPECT_EQ(space.composite().dim(), 16u);
  EXPECT_THROW(TwoModeSpace(17), DimensionCapError);
  // A lowers the first factor: A|1,2> = |0,2>.
  const auto psi = fock::StateVector::basis(space.composite(), space.index(1, 2));
  const auto out = space.first_lowering() * psi;
  EXPECT_EQ(out(space.index(0, 2)), cplx(1.0));
  const auto out_b = space.second_lowering() * psi;
  EXPECT_NEAR(out_b(space.index(1, 1)).real(), std::sqrt(2.0), 1e-15);
}

TEST(EvolvedOps, TimeZeroIsIdentityMap) {
  const TwoModeSpace space(6);
  const auto ops = evolved_ops(space, 1.0, 0.0);
  EXPECT_EQ(ops.a.matrix(), space.first_lowering().matrix());
  EXPECT_EQ(ops.b.matrix(), space.second_lowering().matrix());
}

TEST(EvolvedOps, AnnihilatesEvolvedVacuum) {
  const TwoModeSpace space(12);
  const auto ops = evolved_ops(space, 1.0, 0.5);
  const auto vac = space.embed(ground_state(1.0, 0.5, 12));
  // Per level: sqrt(n) sech (tanh^n cosh - tanh^(n-1) sinh) = 0.
  EXPECT_LE((ops.a * vac).norm(), 1e-6);
  EXPECT_LE((ops.b * vac).norm(), 1e-6);
  const auto report = verify_evolved_ops(space, 1.0, 0.5, 2);
  expect_all_pass(report);
  EXPECT_LE(report.at("evolved.annihilate_a").residual, 1e-6);
  EXPECT_LE(report.at("evolved.number_difference").residual, 1e-10);
}

TEST(HoleRelations, Examples) {
  const auto r = hole_relations(TwoModeSpace(12), 1.0, 0.7);
  expect_all_pass(r);
  for (const auto& rec : r.records()) EXPECT_LE(rec.residual, 1e-6) << rec.name;

  const auto r0 = hole_relations(TwoModeSpace(12), 1.0, 0.0);
  EXPECT_EQ(r0.at("hole.a_dag_cosh").status, CheckStatus::kPass);
  EXPECT_EQ(r0.at("hole.a_dag_sinh").status, CheckStatus::kSkipped);
  EXPECT_FALSE(r0.at("hole.a_dag_sinh").reason.empty());
}

TEST(CanonicalMap, CcrAndQuadraticConstant) {
  const TwoModeSpace space(10);
  expect_all_pass(verify_canonical_map(space, 3));
  const auto fit = quadratic_identity(space, 3);
  EXPECT_NEAR(fit.constant, -2.0, 1e-10);
  EXPECT_LE(fit.residual_minus_two, 1e-12);
  EXPECT_GT(fit.residual_minus_one, 0.1);
}

TEST(Su11Pair, ClosuresAtD10) {
  const auto r = su11_two_mode(TwoModeSpace(10), 2);
  EXPECT_EQ(r.records().size(), 3u);
  for (const auto& rec : r.records()) EXPECT_LE(rec.residual, 1e-10) << rec.name;
}

TEST(DoubleSqueeze, ZetaZeroIsIdentity) {
  EXPECT_EQ(double_squeeze(TwoModeSpace(6), 0.0).matrix(), Matrix::Identity(36, 36));
}

TEST(DoubleSqueeze, GroupElementAndAmplitudes) {
  const TwoModeSpace space(12);
  for (double zeta : {0.3, 0.6}) {
    const auto r = verify_double_squeeze(space, zeta, 2);
    expect_all_pass(r);
    EXPECT_LE(r.at("double_squeeze.group_element").residual, 1e-8);
    EXPECT_LE(r.at("double_squeeze.vacuum_amplitudes").residual, 1e-6);
    EXPECT_LE(r.at("double_squeeze.ground_state").residual, 1e-6);
  }
}

TEST(DoubleSqueeze, TensorFactorRealizationSigns) {
  // With A, B as the tensor factors, exp(-zeta (A^dag B^dag - A B))|0,0> carries
  // (-tanh)^n, its adjoint carries +tanh^n.
  const TwoModeSpace space(12);
  const double zeta = 0.6;
  const Operator a = space.first_lowering();
  const Operator b = space.second_lowering();
  const Operator j = a.adjoint() * b.adjoint() - a * b;
  const Matrix u = oracle::taylor_expm(-zeta * j.matrix());
  const auto vac_index = static_cast<Eigen::Index>(space.index(0, 0));
  for (std::size_t n = 0; n < 12 - double_squeeze_state_margin(zeta); ++n) {
    const auto idx = static_cast<Eigen::Index>(space.index(n, n));
    const double expected = oracle::paired_coefficient(n, zeta);
    EXPECT_NEAR(u(idx, vac_index).real(), (n % 2 ? -1.0 : 1.0) * expected, 1e-6) << n;
    EXPECT_NEAR(u.adjoint()(idx, vac_index).real(), expected, 1e-6) << n;
  }
}

TEST(H0HI, Commute) {
  const TwoModeSpace space(10);
  EXPECT_LE(h0_hi_commute(space, 1.3, 0.4, 2), 1e-10);
  EXPECT_EQ(h0_hi_commute(space, 1.3, 0.0, 2), 0.0);
  EXPECT_EQ(h0_hi_commute(space, 0.0, 0.4, 2), 0.0);
}

TEST(Tfd, Examples) {
  EXPECT_NEAR(thermal_number(std::log(2.0), 1.0), 1.0, 1e-12);
  EXPECT_NEAR(thermal_number(1.0, 1.0), 1.0 / (std::exp(1.0) - 1.0), 1e-15);
  EXPECT_NEAR(thermal_number(1.0, 1.0), 0.581977, 1e-6);
  EXPECT_THROW(tfd_theta(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(thermal_number(-1.0, 1.0), std::invalid_argument);
  EXPECT_LT(tfd_theta(200.0, 1.0), 1e-40);
  EXPECT_EQ(thermal_number(1000.0, 1.0), 0.0);
}

TEST(Tfd, SinhSquaredOfThetaOracle) {
  for (double bo : {0.1, 0.5, std::log(2.0), 1.0, 3.0}) {
    const double x = std::exp(-bo / 2);
    EXPECT_NEAR(std::pow(std::sinh(tfd_theta(bo, 1.0)), 2), x * x / (1 - x * x), 1e-12 * (1 + x * x / (1 - x * x)));
    EXPECT_NEAR(thermal_number(bo, 1.0), x * x / (1 - x * x), 1e-12 * (1 + x * x / (1 - x * x)));
  }
}

// --- properties ---------------------------------------------------------------

TEST(DissipativeProperty, NormalizationWithinTail) {
  oracle::Gen gen(41);
  for (int trial = 0; trial < 50; ++trial) {
    const double gt = gen.real(0.0, 2.0);
    const double tail = std::pow(10.0, gen.real(-14, -4));
    const std::size_t d = minimal_dim(gt, tail);
    const auto gs = ground_state(1.0, gt, d, tail);
    // Floating-point summation adds a few ulps on top of the exact geometric tail.
    EXPECT_LE(std::abs(gs.norm_squared() - 1.0), gs.tail_bound() + 1e-15) << gt;
    EXPECT_LE(gs.norm_squared(), 1.0 + 1e-15);
    EXPECT_NEAR(1.0 - gs.norm_squared(), gs.tail_bound(), 1e-13);
  }
}

TEST(DissipativeProperty, NumberWithinTail) {
  oracle::Gen gen(42);
  for (int trial = 0; trial < 50; ++trial) {
    const double gt = gen.real(0.0, 2.0);
    const std::size_t d = minimal_dim(gt, 1e-8);
    const auto gs = ground_state(1.0, gt, d);
    EXPECT_LE(std::abs(gs.mean_number() - mode_number(1.0, gt)), 2.0 * d * gs.tail_bound() + 1e-13);
  }
}

TEST(DissipativeProperty, OverlapFactorizesOverModes) {
  oracle::Gen gen(43);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<ModeSpec> modes;
    const auto m = static_cast<std::size_t>(gen.integer(1, 12));
    for (std::size_t k = 0; k < m; ++k) modes.push_back({"k" + std::to_string(k), gen.real(0, 3), gen.real(0, 2)});
    const double t = gen.real(0, 3);
    double product = 1.0;
    for (const auto& mode : modes) product *= vacuum_overlap({mode}, t);
    EXPECT_NEAR(vacuum_overlap(modes, t), product, 1e-14 * product);
  }
}

TEST(DissipativeProperty, InfiniteVolumeTrend) {
  oracle::Gen gen(44);
  for (int trial = 0; trial < 10; ++trial) {
    const double t = gen.real(0.05, 2.0);
    const double log1 = std::log(vacuum_overlap(identical_modes(1), t));
    double prev = 1.0;
    for (std::size_t m = 1; m <= 64; ++m) {
      const double v = vacuum_overlap(identical_modes(m), t);
      EXPECT_LT(v, prev);
      EXPECT_LE(std::abs(std::log(v) - m * log1), 1e-12);
      prev = v;
    }
  }
}

TEST(DissipativeProperty, DenseAndPairedBackendsAgree) {
  oracle::Gen gen(45);
  const std::size_t d = 12;
  const TwoModeSpace space(d);
  const Operator a = space.first_lowering();
  const Operator na = a.adjoint() * a;
  for (int trial = 0; trial < 6; ++trial) {
    const double gt = gen.real(0.0, 0.8);
    const auto paired = ground_state(1.0, gt, d);
    const auto dense = space.embed(paired);
    const double tail = paired.tail_bound();
    // coefficients
    for (std::size_t n = 0; n < d; ++n) {
      EXPECT_EQ(dense(space.index(n, n)).real(), paired.coeffs()[n]);
    }
    // <N_A>
    const double dense_n = dense.amplitudes().dot((na * dense).amplitudes()).real();
    EXPECT_NEAR(dense_n, paired.mean_number(), 1e-13);
    EXPECT_NEAR(dense_n, mode_number(1.0, gt), 2.0 * d * tail + 1e-13);
    // overlap with |0,0>
    const auto vac = fock::StateVector::basis(space.composite(), space.index(0, 0));
    EXPECT_NEAR(vac.amplitudes().dot(dense.amplitudes()).real(), vacuum_overlap(identical_modes(1), gt), 1e-15);
  }
}

TEST(DissipativeProperty, HamiltoniansCommuteForRandomParameters) {
  oracle::Gen gen(46);
  const TwoModeSpace space(8);
  for (int trial = 0; trial < 10; ++trial) {
    EXPECT_LE(h0_hi_commute(space, gen.real(0, 5), gen.real(0, 5), 2), 1e-10);
  }
}

TEST(DissipativeProperty, ThermalNumberDecreasesToZero) {
  double prev = std::numeric_limits<double>::infinity();
  for (double bo = 0.05; bo < 60; bo *= 1.3) {
    const double n = thermal_number(bo, 1.0);
    EXPECT_LT(n, prev);
    EXPECT_GE(n, 0.0);
    prev = n;
  }
  EXPECT_LT(prev, 1e-20);
}
