#include <gtest/gtest.h>

#include "lpai/analysis/fringe_fit.hpp"
#include "lpai/error.hpp"
#include "lpai/interferometer.hpp"
#include "lpai/random.hpp"
#include "support.hpp"

using namespace lpai;
using analysis::fit_fringe;

namespace {

struct Data {
    std::vector<double> phase, pop;
};

Data synthetic(std::size_t n, const FringeModel& fm, double phase_noise, std::uint64_t seed) {
    RandomStream rng(seed);
    Data d;
    for (std::size_t i = 0; i < n; ++i) {
        const double phi = 4.0 * constants::pi * static_cast<double>(i) / static_cast<double>(n);
        d.phase.push_back(phi);
        d.pop.push_back(fm.offset - 0.5 * fm.contrast * std::cos(phi + rng.normal(0.0, phase_noise) + fm.phase_origin));
    }
    return d;
}

}  // namespace

TEST(FitFringe, NoiselessRecovery) {
    const FringeModel truth{1.0, 0.5, 0.3};
    const auto d = synthetic(200, truth, 0.0, 1);
    const auto fit = fit_fringe(d.phase, d.pop);
    EXPECT_NEAR(fit.model.contrast, 1.0, 1e-10);
    EXPECT_NEAR(fit.model.offset, 0.5, 1e-10);
    EXPECT_NEAR(fit.model.phase_origin, 0.3, 1e-10);
    EXPECT_LT(fit.residual_rms, 1e-12);
    EXPECT_EQ(fit.residuals.size(), d.phase.size());
}

// Repeat-fit oracle: the phase-origin scatter over seeded repeats.
TEST(FitFringe, PhaseOriginUnderBudgetNoise) {
    const FringeModel truth{1.0, 0.5, 0.3};
    double sum2 = 0.0;
    const int repeats = 30;
    for (int r = 0; r < repeats; ++r) {
        const auto d = synthetic(12000, truth, 31.1e-3, 100 + r);
        const double err = fit_fringe(d.phase, d.pop).model.phase_origin - 0.3;
        sum2 += err * err;
    }
    EXPECT_LE(std::sqrt(sum2 / repeats), 0.5e-3);
}

TEST(FitFringe, ConstantPopulationsAreRankDeficient) {
    std::vector<double> phase, pop(50, 0.4);
    for (int i = 0; i < 50; ++i) phase.push_back(0.1 * i);
    EXPECT_THROW(fit_fringe(phase, pop), RankDeficiencyError);
}

TEST(FitFringe, SinglePhaseIsRankDeficient) {
    std::vector<double> phase(20, 1.0), pop(20);
    for (int i = 0; i < 20; ++i) pop[i] = 0.3 + 0.01 * i;
    EXPECT_THROW(fit_fringe(phase, pop), RankDeficiencyError);
}

TEST(FitFringe, InputValidation) {
    std::vector<double> a(5, 0.0), b(5, 0.0), c(6, 0.0);
    EXPECT_THROW(fit_fringe(a, b), InvalidArgumentError);
    EXPECT_THROW(fit_fringe(a, c), InvalidArgumentError);
}

// Shifting every applied phase by s moves phi0 by -s; scaling populations
// about the offset scales the contrast.
TEST(FitFringe, Equivariance) {
    RandomStream rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const FringeModel truth{rng.uniform(0.2, 1.0), rng.uniform(0.3, 0.7), rng.uniform(-3.0, 3.0)};
        auto d = synthetic(64, truth, 0.0, trial);
        const auto base = fit_fringe(d.phase, d.pop);
        const double shift = rng.uniform(-1.0, 1.0);
        auto shifted = d.phase;
        for (auto& p : shifted) p += shift;
        const auto moved = fit_fringe(shifted, d.pop);
        EXPECT_NEAR(std::remainder(moved.model.phase_origin - (base.model.phase_origin - shift), 2 * constants::pi), 0.0,
                    1e-9);
        auto scaled = d.pop;
        for (auto& p : scaled) p = 0.5 * (p - truth.offset) + truth.offset;
        EXPECT_NEAR(fit_fringe(d.phase, scaled).model.contrast, 0.5 * base.model.contrast, 1e-9);
    }
}
