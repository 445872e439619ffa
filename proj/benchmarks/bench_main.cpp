#include <benchmark/benchmark.h>

// libbenchmark_main ships as LTO bytecode from a different gcc; define main here.
BENCHMARK_MAIN();
