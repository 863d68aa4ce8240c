// Parallel kernels against their serial references at model-sized shapes.
// The OpenMP variants take the thread count as the benchmark argument.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <vector>

#include "atfnn/diff/kernels.hpp"
#include "atfnn/diff/kernels_ref.hpp"
#include "atfnn/diff/parameter.hpp"

using namespace atfnn;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    diff::Rng rng(seed);
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    return v;
}

void set_threads(const benchmark::State& state) {
    if (state.range(0) > 0) omp_set_num_threads(static_cast<int>(state.range(0)));
}

// BiLSTM input projection of a 16-segment batch: (16·128)×640 by 640×512.
constexpr std::size_t kM = 2048, kN = 512, kK = 640;

template <bool Ref>
void BM_Gemm(benchmark::State& state) {
    set_threads(state);
    const auto a = random_vector(kM * kK, 1), b = random_vector(kK * kN, 2);
    std::vector<double> c(kM * kN);
    for (auto _ : state) {
        if constexpr (Ref)
            kernels::ref::gemm(false, false, kM, kN, kK, a.data(), kK, b.data(), kN, c.data(), kN, false);
        else
            kernels::gemm(false, false, kM, kN, kK, a.data(), kK, b.data(), kN, c.data(), kN, false);
        benchmark::DoNotOptimize(c.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * kM * kN * kK));
}

// First F-Encoder feed-forward conv: 5×1 over time, 8 -> 32 channels.
kernels::Conv2dGeometry conv_geometry() {
    kernels::Conv2dGeometry g;
    g.batch = 4;
    g.in_h = 128;
    g.in_w = 80;
    g.in_c = 8;
    g.k_h = 5;
    g.k_w = 1;
    g.out_c = 32;
    g.pad_h = 2;
    return g;
}

template <bool Ref>
void BM_ConvForward(benchmark::State& state) {
    set_threads(state);
    const kernels::Conv2dGeometry g = conv_geometry();
    const auto x = random_vector(g.batch * g.in_h * g.in_w * g.in_c, 3);
    const auto k = random_vector(g.patch() * g.out_c, 4), bias = random_vector(g.out_c, 5);
    std::vector<double> y(g.batch * g.out_h() * g.out_w() * g.out_c);
    for (auto _ : state) {
        if constexpr (Ref)
            kernels::ref::conv2d_forward(g, x.data(), k.data(), bias.data(), y.data());
        else
            kernels::conv2d_forward(g, x.data(), k.data(), bias.data(), y.data());
        benchmark::DoNotOptimize(y.data());
    }
}

template <bool Ref>
void BM_ConvBackward(benchmark::State& state) {
    set_threads(state);
    const kernels::Conv2dGeometry g = conv_geometry();
    const auto x = random_vector(g.batch * g.in_h * g.in_w * g.in_c, 3);
    const auto k = random_vector(g.patch() * g.out_c, 4);
    const auto dy = random_vector(g.batch * g.out_h() * g.out_w() * g.out_c, 6);
    std::vector<double> dx(x.size()), dk(k.size()), db(g.out_c);
    for (auto _ : state) {
        if constexpr (Ref)
            kernels::ref::conv2d_backward(g, x.data(), k.data(), dy.data(), dx.data(), dk.data(), db.data());
        else
            kernels::conv2d_backward(g, x.data(), k.data(), dy.data(), dx.data(), dk.data(), db.data());
        benchmark::DoNotOptimize(dx.data());
    }
}

// Self-attention over the 80 frequency tokens of 4·128 frames, 4 heads of width 2.
constexpr std::size_t kSeq = 512, kTok = 80, kHeads = 4, kHeadDim = 2;

template <bool Ref>
void BM_Attention(benchmark::State& state) {
    set_threads(state);
    const std::size_t n = kSeq * kTok * kHeads * kHeadDim;
    const auto q = random_vector(n, 7), k = random_vector(n, 8), v = random_vector(n, 9);
    std::vector<double> out(n);
    for (auto _ : state) {
        if constexpr (Ref)
            kernels::ref::attention_forward(kSeq, kTok, kHeads, kHeadDim, q.data(), k.data(), v.data(), out.data());
        else
            kernels::attention_forward(kSeq, kTok, kHeads, kHeadDim, q.data(), k.data(), v.data(), out.data());
        benchmark::DoNotOptimize(out.data());
    }
}

void thread_args(benchmark::internal::Benchmark* b) {
    const int max = omp_get_max_threads();
    for (int t = 1; t <= max; t *= 2) b->Arg(t);
    if ((max & (max - 1)) != 0) b->Arg(max);
    b->UseRealTime();
}

}  // namespace

BENCHMARK(BM_Gemm<true>)->Name("gemm/serial_ref")->Arg(0);
BENCHMARK(BM_Gemm<false>)->Name("gemm/openmp")->Apply(thread_args);
BENCHMARK(BM_ConvForward<true>)->Name("conv_forward/serial_ref")->Arg(0);
BENCHMARK(BM_ConvForward<false>)->Name("conv_forward/openmp")->Apply(thread_args);
BENCHMARK(BM_ConvBackward<true>)->Name("conv_backward/serial_ref")->Arg(0);
BENCHMARK(BM_ConvBackward<false>)->Name("conv_backward/openmp")->Apply(thread_args);
BENCHMARK(BM_Attention<true>)->Name("attention_forward/serial_ref")->Arg(0);
BENCHMARK(BM_Attention<false>)->Name("attention_forward/openmp")->Apply(thread_args);

BENCHMARK_MAIN();
