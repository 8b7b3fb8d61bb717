#include <benchmark/benchmark.h>

#include "ngs/assembly.hpp"
#include "ngs/pulse.hpp"
#include "ngs/stepper.hpp"

#include <cmath>

using namespace ngs;

namespace {

void BM_AssembleDirichletGaussian(benchmark::State& state)
{
    const double h = 1.0 / static_cast<double>(state.range(0));
    const Mesh1D mesh = Mesh1D::uniform({0.0, 1.0}, 0.0, h);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_nonlocal(mesh, Kernel::gaussian(), BcMode::Dirichlet));
    }
    state.counters["nodes"] = static_cast<double>(mesh.node_count());
}
BENCHMARK(BM_AssembleDirichletGaussian)->Arg(20)->Arg(80)->Arg(320)->Unit(benchmark::kMillisecond);

void BM_AssembleNeumannDispersal(benchmark::State& state)
{
    const double h = 0.05 * 16.0 / static_cast<double>(state.range(0));
    const Mesh1D mesh = Mesh1D::uniform({-10.0, 10.0}, 5.0, h);
    const Kernel k = Kernel::dispersal_exp(3.0, 5.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_kernel_coupling(mesh, k, BcMode::Neumann, QuadratureRule::cached(4)));
    }
    state.counters["nodes"] = static_cast<double>(mesh.node_count());
}
BENCHMARK(BM_AssembleNeumannDispersal)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_FactorSystems(benchmark::State& state)
{
    const Mesh1D mesh = Mesh1D::uniform({-40.0, 40.0}, 5.0, 0.05);
    const Kernel k = Kernel::dispersal_exp(static_cast<double>(state.range(0)), 5.0);
    const AssembledOperators ops = assemble_nonlocal(mesh, k, BcMode::Neumann);
    PhysicalParams p = PulseSetup{}.params;
    p.scale_c = k.laplacian_scale();
    for (auto _ : state) {
        benchmark::DoNotOptimize(FactoredSystems::build(ops, p, 0.01));
    }
}
BENCHMARK(BM_FactorSystems)->Arg(3)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_PulseStep(benchmark::State& state)
{
    const Mesh1D mesh = Mesh1D::uniform({-40.0, 40.0}, 5.0, 0.05);
    const Kernel k = Kernel::dispersal_exp(3.0, 5.0);
    const AssembledOperators ops = assemble_nonlocal(mesh, k, BcMode::Neumann);
    PhysicalParams p = PulseSetup{}.params;
    p.scale_c = k.laplacian_scale();
    const Stepper stepper(mesh, ops, p, 0.01);
    StepperState st = stepper.interpolate(pulse_u0, pulse_v0);
    for (auto _ : state) {
        st = stepper.step(st);
        benchmark::DoNotOptimize(st.u.data());
    }
    state.counters["nodes"] = static_cast<double>(mesh.node_count());
}
BENCHMARK(BM_PulseStep)->Unit(benchmark::kMicrosecond);

void BM_StrongFormK(benchmark::State& state)
{
    const Kernel k = Kernel::gaussian();
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_K_strong([](double y) { return std::sin(3.0 * y); }, x, k, BcMode::Dirichlet,
                                               {0.0, 1.0}));
        x = x < 1.0 ? x + 0.01 : 0.0;
    }
}
BENCHMARK(BM_StrongFormK)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
