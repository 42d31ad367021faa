// Serial reference vs OpenMP tileset enumeration.
//
//   ./bench_enumerate --benchmark_filter=Identity
//   OMP_NUM_THREADS=8 ./bench_enumerate

#include <benchmark/benchmark.h>
#include <omp.h>

#include "bsdomino/pam.hpp"
#include "bsdomino/tileset.hpp"

namespace {

using namespace bsdomino;

AffinePiece piece(long c1, long c2, Mat2 M, RatVec2 b) {
    AffinePiece p;
    p.corner = IntVec2(Int(c1), Int(c2));
    p.M = std::move(M);
    p.b = std::move(b);
    return p;
}

PiecewiseAffineMap identity_map() { return PiecewiseAffineMap({piece(0, 0, Mat2::identity(), {})}); }
PiecewiseAffineMap escape_map() { return PiecewiseAffineMap({piece(0, 0, Mat2::identity(), {Rat(2), Rat(2)})}); }

// Two squares: a contraction and a shift back onto the first square.
PiecewiseAffineMap two_piece_map() {
    Mat2 a{Rat(Int(1), Int(2)), Rat(0), Rat(Int(1), Int(3)), Rat(Int(1), Int(2))};
    return PiecewiseAffineMap({piece(0, 0, a, {Rat(Int(1), Int(4)), Rat(0)}),
                               piece(1, 0, Mat2::identity(), {Rat(-1), Rat(Int(1), Int(3))})});
}

template <Tileset (*Enumerate)(const BsParams&, const PiecewiseAffineMap&, const EnumerationOptions&)>
void run(benchmark::State& state, const PiecewiseAffineMap& f, BsParams p) {
    std::size_t tiles = 0;
    for (auto _ : state) {
        Tileset ts = Enumerate(p, f, EnumerationOptions{});
        tiles = ts.tiles.size();
        benchmark::DoNotOptimize(ts.tiles.data());
    }
    state.counters["tiles"] = static_cast<double>(tiles);
    state.counters["threads"] = omp_get_max_threads();
}

void BM_Identity23_Serial(benchmark::State& s) { run<enumerate_tileset_serial>(s, identity_map(), {2, 3}); }
void BM_Identity23_OpenMP(benchmark::State& s) { run<enumerate_tileset>(s, identity_map(), {2, 3}); }
void BM_Escape32_Serial(benchmark::State& s) { run<enumerate_tileset_serial>(s, escape_map(), {3, 2}); }
void BM_Escape32_OpenMP(benchmark::State& s) { run<enumerate_tileset>(s, escape_map(), {3, 2}); }
void BM_TwoPiece22_Serial(benchmark::State& s) { run<enumerate_tileset_serial>(s, two_piece_map(), {2, 2}); }
void BM_TwoPiece22_OpenMP(benchmark::State& s) { run<enumerate_tileset>(s, two_piece_map(), {2, 2}); }

}  // namespace

BENCHMARK(BM_Identity23_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Identity23_OpenMP)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Escape32_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Escape32_OpenMP)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwoPiece22_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwoPiece22_OpenMP)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
