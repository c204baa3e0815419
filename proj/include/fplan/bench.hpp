#pragma once

#include <string>
#include <vector>

namespace fplan {

struct BenchRow {
  int count = 0;
  std::string stage;  ///< sampling | feasibility | cost | pipeline
  std::string mode;   ///< serial | parallel
  double median_ms = 0.0;
  double p95_ms = 0.0;
  double speedup = 1.0;  ///< serial median / this mode's median, per stage
};

/// Times the sampling/feasibility/cost pipeline on a fixed synthetic straight
/// road with one dynamic obstacle, for each trajectory count of the density
/// ladder. Runs serial always and parallel additionally when requested;
/// parallel rows carry the speedup against the serial median.
std::vector<BenchRow> run_benchmark(const std::vector<int>& counts, int repetitions = 30,
                                    bool with_parallel = true, int warmup = 5);

/// Columns: count,stage,mode,median_ms,p95_ms,speedup.
std::string bench_to_csv(const std::vector<BenchRow>& rows);

/// Density level for a ladder count (50, 180, 800, 3500, 13000, 90000);
/// throws std::invalid_argument for anything else.
int density_for_count(int count);

}  // namespace fplan
