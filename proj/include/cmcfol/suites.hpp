#pragma once

// Verification suites shared by the command-line tool, the acceptance test
// binary and the Python module. Random sampling uses a seeded mt19937_64, so
// a fixed seed gives identical reports.

#include <cstdint>

#include "cmcfol/radial_metric.hpp"
#include "cmcfol/reeb_foliation.hpp"
#include "cmcfol/report.hpp"
#include "cmcfol/torus2d.hpp"
#include "cmcfol/turbularization.hpp"

namespace cmcfol {

// Profile invariants: closed form, junctions, flatness, the ratio
// h / phi^{n-2}, limits at the axis, cylinder curvatures, Ricci scan.
VerificationReport profile_suite(const RadialProfile& profile);

// ODE checks: first integral on random starts, cylinder fixed points,
// translation equivariance, length law, graph/ODE equivalence, reflection,
// flux.
VerificationReport ode_suite(const RadialProfile& profile, std::uint64_t seed,
                             int random_starts = 50);

// Enlarged Reeb component: leafwise CMC, mean curvature across leaves,
// volume prescription, partition and quotient consistency.
VerificationReport reeb_suite(const EnlargedReebComponent& component,
                              std::uint64_t seed, int partition_points = 10000);

// Turbularization model: rotational invariance, single-valued graph, flat
// outer band, spiralling onto the limit cylinder, approach side.
VerificationReport turb_suite(const TurbModelSurface& surface,
                              std::uint64_t seed, int rotation_samples = 1000);

// Grid checks of the finest run plus the refinement study at Nx/4, Nx/2
// (levels not divisible by 4 are skipped).
VerificationReport torus_suite(const TorusResult& finest);

// Max |kappa + f| of a pipeline run at another Nx.
double torus_kappa_error(TorusParams params, int Nx);

}  // namespace cmcfol
