#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qdgate/pulse_scheduler.hpp"

using namespace qdgate;
namespace orc = qdgate::oracle;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(IswapTiming, GaAsExample) {
  const auto sol = solve_iswap_timing(1.4, 0.1, 10, 10);
  EXPECT_EQ(sol.k, 5);
  EXPECT_EQ(sol.m, 1);
  EXPECT_NEAR(sol.v_required, 0.105, 1e-12);
  EXPECT_NEAR(sol.t, 22.43994752564138, 1e-10);
  EXPECT_NEAR(sol.t_fs(), 14.770, 5e-4);
  EXPECT_NEAR(sol.v_residual, 0.005, 1e-12);
  EXPECT_NEAR(fidelity_penalty(sol, 1.4, sol.v_required, 0.0), 1.0, 1e-12);
}

TEST(IswapTiming, CandidatesMatchBruteForce) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> eps(0.5, 2.0);
  std::uniform_real_distribution<double> v(0.01, 0.3);
  std::uniform_int_distribution<int> lim(1, 12);
  for (int trial = 0; trial < 50; ++trial) {
    const double e = eps(rng);
    const double target = v(rng);
    const int km = lim(rng);
    const int mm = lim(rng);
    const auto got = iswap_timing_candidates(e, target, km, mm);
    const auto want = orc::enumerate_timings(e, target, km, mm);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].k, want[i].k);
      EXPECT_EQ(got[i].m, want[i].m);
      EXPECT_NEAR(got[i].t, want[i].t, 1e-12 * want[i].t);
      EXPECT_NEAR(got[i].v_required, want[i].v, 1e-12);
    }
    const auto best = solve_iswap_timing(e, target, km, mm);
    const double min_residual =
        std::min_element(want.begin(), want.end(), [](const auto& a, const auto& b) {
          return a.residual < b.residual;
        })->residual;
    EXPECT_NEAR(best.v_residual, min_residual, 1e-12);
  }
}

TEST(IswapTiming, EveryCandidateIsAnIswap) {
  for (const auto& c : iswap_timing_candidates(1.4, 0.1, 6, 6)) {
    EXPECT_NEAR(fidelity_penalty(c, 1.4, c.v_required, 0.0), 1.0, 1e-10) << c.k << "," << c.m;
    // both integer constraints hold
    EXPECT_LT(orc::wrapped_distance(c.t * 1.4, 0.0), 1e-10);
    EXPECT_NEAR(c.v_required * c.t, c.m * kPi - kPi / 4, 1e-10);
  }
}

TEST(IswapTiming, TieBreaksToShorterWindow) {
  // eps = 2 pi makes t = k, and the target is hit exactly at k = m = 1.
  const auto all = iswap_timing_candidates(2.0 * kPi, 0.75 * kPi, 4, 4);
  const auto best = solve_iswap_timing(2.0 * kPi, 0.75 * kPi, 4, 4);
  for (const auto& c : all) {
    EXPECT_LE(best.v_residual, c.v_residual);
    if (c.v_residual == best.v_residual) EXPECT_LE(best.t, c.t);
  }
  EXPECT_EQ(best.k, 1);
  EXPECT_EQ(best.m, 1);
}

TEST(IswapTiming, EmptySearchSpace) {
  EXPECT_THROW(solve_iswap_timing(1.4, 0.1, 0, 10), InvalidArgument);
  EXPECT_THROW(solve_iswap_timing(1.4, 0.1, 10, 0), InvalidArgument);
  EXPECT_THROW(solve_iswap_timing(-1.4, 0.1, 10, 10), InvalidArgument);
}

TEST(FidelityPenalty, DegradesWithMismatch) {
  const auto sol = solve_iswap_timing(1.4, 0.1, 10, 10);
  const double exact = fidelity_penalty(sol, 1.4, sol.v_required, 0.0);
  const double off_v = fidelity_penalty(sol, 1.4, 0.1, 0.0);
  const double jitter = fidelity_penalty(sol, 1.4, sol.v_required, 0.5);
  EXPECT_NEAR(exact, 1.0, 1e-12);
  EXPECT_LT(off_v, exact);
  EXPECT_LT(jitter, exact);
  // With v off by dv the central block angle is off by 2 dv t.
  const double dphi = 2.0 * (0.1 - sol.v_required) * sol.t;
  EXPECT_NEAR(off_v, (2.0 + 2.0 * std::cos(dphi)) / 4.0, 1e-12);
}

TEST(IdlePhase, CompensationUndoesFreeEvolution) {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> span(0.0, 30.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> spans = {span(rng), span(rng), span(rng)};
    const double eps = 1.4;
    const auto idle = idle_phase_tracker(eps, spans);
    const double total = spans[0] + spans[1] + spans[2];
    EXPECT_NEAR(idle.idle_time, total, 1e-12);
    EXPECT_GT(idle.compensating_gamma_z, -kPi);
    EXPECT_LE(idle.compensating_gamma_z, kPi);
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = std::polar(1.0, -eps * total / 2);
    expected(1, 1) = std::polar(1.0, eps * total / 2);
    EXPECT_LT((idle.accumulated.eigen() - expected).norm(), 1e-12);
    const auto undone = u_z(idle.compensating_gamma_z) * idle.accumulated;
    EXPECT_NEAR(fidelity_up_to_phase(undone, quasi_pauli("I")), 1.0, 1e-12);
  }
}

TEST(IdlePhase, NoIdleTime) {
  const auto idle = idle_phase_tracker(1.4, std::vector<double>{});
  EXPECT_EQ(idle.idle_time, 0.0);
  EXPECT_EQ(idle.compensating_gamma_z, 0.0);
  EXPECT_THROW(idle_phase_tracker(1.4, std::vector<double>{-1.0}), InvalidArgument);
}

TEST(Budget, GaAsMagnitudes) {
  const auto b = decoherence_budget(40.0, 0.1);
  EXPECT_NEAR(b.tau_v_fs, 6.582119569, 1e-12);
  EXPECT_EQ(b.op_count, 6077);
  EXPECT_GE(b.op_count, 1000);
  EXPECT_LT(b.op_count, 10000);
}

TEST(Budget, Edges) {
  // tau_d equal to tau_v counts exactly one operation
  EXPECT_EQ(decoherence_budget(kHbarEvFs / 1000.0, 1.0).op_count, 1);
  EXPECT_EQ(decoherence_budget(1e-9, 0.1).op_count, 0);
  EXPECT_THROW(decoherence_budget(0.0, 0.1), InvalidArgument);
  EXPECT_THROW(decoherence_budget(40.0, -0.1), InvalidArgument);
}

TEST(Budget, MonotoneInCoupling) {
  std::int64_t last = 0;
  for (double v : {0.01, 0.05, 0.1, 0.2, 0.5}) {
    const auto b = decoherence_budget(40.0, v);
    EXPECT_GE(b.op_count, last);
    last = b.op_count;
  }
}

TEST(IswapTiming, ConstructedExactWindow) {
  const double eps = 2 * kPi;
  const double v = (1.0 - 0.25) / 2.0 * 2 * kPi;
  const auto sol = solve_iswap_timing(eps, v, 1, 1);
  EXPECT_EQ(sol.k, 1);
  EXPECT_EQ(sol.m, 1);
  EXPECT_NEAR(sol.t, 1.0, 1e-15);
  EXPECT_NEAR(sol.v_residual, 0.0, 1e-15);
  // a single candidate is returned however poor it is
  const auto forced = solve_iswap_timing(1.4, 5.0, 1, 1);
  EXPECT_EQ(forced.k, 1);
  EXPECT_EQ(forced.m, 1);
  EXPECT_GT(forced.v_residual, 4.0);
}

TEST(FidelityPenalty, SmallCouplingExcessMatchesDirectEvaluation) {
  const auto sol = solve_iswap_timing(1.4, 0.1, 10, 10);
  const double v = sol.v_required * (1.0 + 1e-3);
  const Matrix u = two_qubit_propagator({1.4, v}, sol.t).eigen();
  const double direct = std::abs((iswap().eigen().adjoint() * u).trace()) / 4.0;
  const double f = fidelity_penalty(sol, 1.4, v, 0.0);
  EXPECT_LT(f, 1.0);
  EXPECT_NEAR(f, direct, 1e-12);
}

TEST(IdlePhase, NamedSpans) {
  const double eps = 1.4;
  const auto full = idle_phase_tracker(eps, std::vector<double>{2 * kPi / eps});
  EXPECT_LT((full.accumulated.eigen() + Matrix::Identity(2, 2)).norm(), 1e-14);
  EXPECT_NEAR(std::sin(full.compensating_gamma_z), 0.0, 1e-14);
  EXPECT_NEAR(std::cos(full.compensating_gamma_z), 1.0, 1e-14);
  const auto half = idle_phase_tracker(eps, std::vector<double>{kPi / eps});
  EXPECT_LT(std::abs(half.accumulated(0, 0) - std::polar(1.0, -kPi / 2)), 1e-14);
  EXPECT_LT(std::abs(half.accumulated(1, 1) - std::polar(1.0, kPi / 2)), 1e-14);
  EXPECT_NEAR(std::abs(half.compensating_gamma_z), kPi, 1e-12);
  // On a register, free evolution with eps T = 2 k pi and no coupling is the identity.
  const Matrix h = 0.5 * eps * (orc::embed(orc::pauli('Z'), 0, 2) + orc::embed(orc::pauli('Z'), 1, 2));
  const Matrix free = orc::taylor_expm(Complex(0, -1) * (4 * kPi / eps) * h);
  EXPECT_LT((free - Matrix::Identity(4, 4)).norm(), 1e-12);
}

TEST(Budget, DoublingCouplingDoublesCount) {
  const auto a = decoherence_budget(40.0, 0.1);
  const auto b = decoherence_budget(40.0, 0.2);
  EXPECT_NEAR(b.tau_v_fs, a.tau_v_fs / 2, 1e-12);
  EXPECT_NEAR(static_cast<double>(b.op_count), 2.0 * a.op_count, 1.0);
}
