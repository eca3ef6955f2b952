#include <benchmark/benchmark.h>

// The distribution's static benchmark_main carries LTO bytecode tied to one compiler release.
BENCHMARK_MAIN();
