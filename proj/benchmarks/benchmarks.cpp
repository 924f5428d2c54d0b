#include <benchmark/benchmark.h>

#include <cmath>

#include "lapsewick/hessian.hpp"
#include "lapsewick/spectral.hpp"
#include "lapsewick/wick.hpp"

using namespace lapsewick;

namespace {
AdmTriple curved_triple(const Grid& g) {
  Background bg = curved_background(g.dim(), Signature::Lorentzian, 1.0, 1.0,
                                    0.08, 42);
  return sample_triple(bg, g);
}
}  // namespace

static void BM_AssembleHessian(benchmark::State& state) {
  Grid g(1, static_cast<int>(state.range(0)), static_cast<int>(state.range(0)),
         1.0, 1.0);
  AdmTriple tri = curved_triple(g);
  Field<double> v(g, 1.0);
  for (auto _ : state) {
    HessianOperator op = assemble_hessian(tri, v, 0.7);
    benchmark::DoNotOptimize(op.weight.sum());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_AssembleHessian)->Arg(16)->Arg(32)->Arg(48);

static void BM_ApplyRotatedOperator(benchmark::State& state) {
  Grid g(1, 48, 48, 1.0, 1.0);
  HessianOperator op = assemble_hessian(curved_triple(g), Field<double>(g, 1.0),
                                        1.1);
  Eigen::VectorXcd f = Eigen::VectorXcd::Random(g.size());
  for (auto _ : state) benchmark::DoNotOptimize(op.apply_delta(f).sum());
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_ApplyRotatedOperator);

static void BM_TransformTriple(benchmark::State& state) {
  Grid g(1, 32, 32, 1.0, 1.0);
  AdmTriple tri = wick_rotate_fiducial(curved_triple(g), 0.9);
  DiffeoMap m = boost_map(1, 0.3);
  for (auto _ : state) {
    AdmTriple out = transform_triple(tri, m);
    benchmark::DoNotOptimize(out.lapse(0));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_TransformTriple);

static void BM_DenseSpectrum(benchmark::State& state) {
  Grid g(1, 16, 32, 1.0, 1.0);
  HessianOperator op = assemble_hessian(curved_triple(g), Field<double>(g, 1.0),
                                        0.7);
  Eigen::MatrixXcd d = op.dense_delta();
  for (auto _ : state)
    benchmark::DoNotOptimize(dense_eigenvalues(d).front());
}
BENCHMARK(BM_DenseSpectrum);

BENCHMARK_MAIN();
