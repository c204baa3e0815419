#include <doctest.h>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fplan/bench.hpp"

namespace {

const fplan::BenchRow* find_row(const std::vector<fplan::BenchRow>& rows, int count,
                                const std::string& stage, const std::string& mode) {
  for (const fplan::BenchRow& row : rows) {
    if (row.count == count && row.stage == stage && row.mode == mode) return &row;
  }
  return nullptr;
}

}  // namespace

TEST_SUITE("bench") {

TEST_CASE("the ladder maps counts to density levels") {
  CHECK(fplan::density_for_count(50) == 1);
  CHECK(fplan::density_for_count(180) == 2);
  CHECK(fplan::density_for_count(800) == 3);
  CHECK(fplan::density_for_count(3500) == 4);
  CHECK(fplan::density_for_count(13000) == 5);
  CHECK(fplan::density_for_count(90000) == 6);
  CHECK_THROWS_WITH_AS(fplan::density_for_count(70), "count 70 is not on the density ladder",
                       std::invalid_argument);
  CHECK_THROWS_AS(fplan::run_benchmark({70}, 1, false, 0), std::invalid_argument);
}

TEST_CASE("each count yields all four stages in both modes") {
  const std::vector<fplan::BenchRow> rows = fplan::run_benchmark({50, 180}, 5, true, 1);
  REQUIRE(rows.size() == 16);  // 2 counts x 4 stages x 2 modes

  for (int count : {50, 180}) {
    for (const char* stage : {"sampling", "feasibility", "cost", "pipeline"}) {
      for (const char* mode : {"serial", "parallel"}) {
        const fplan::BenchRow* row = find_row(rows, count, stage, mode);
        REQUIRE(row != nullptr);
        CHECK(row->median_ms > 0.0);
        CHECK(row->p95_ms >= row->median_ms);
        if (std::string(mode) == "serial") {
          CHECK(row->speedup == 1.0);
        } else {
          CHECK(row->speedup > 0.0);
        }
      }
    }
  }

  // 180 samples are 3.6x the work of 50; medians must not shrink materially.
  const fplan::BenchRow* small = find_row(rows, 50, "pipeline", "serial");
  const fplan::BenchRow* large = find_row(rows, 180, "pipeline", "serial");
  CHECK(large->median_ms >= 0.9 * small->median_ms);
}

TEST_CASE("serial-only runs emit no parallel rows") {
  const std::vector<fplan::BenchRow> rows = fplan::run_benchmark({50}, 3, false, 0);
  REQUIRE(rows.size() == 4);
  for (const fplan::BenchRow& row : rows) {
    CHECK(row.mode == "serial");
    CHECK(row.count == 50);
    CHECK(row.speedup == 1.0);
  }
}

TEST_CASE("the CSV carries the documented columns") {
  const std::vector<fplan::BenchRow> rows = fplan::run_benchmark({50}, 2, false, 0);
  const std::string csv = fplan::bench_to_csv(rows);
  std::istringstream in(csv);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "count,stage,mode,median_ms,p95_ms,speedup");

  int data_lines = 0;
  while (std::getline(in, line)) {
    ++data_lines;
    CHECK(line.rfind("50,", 0) == 0);
    int commas = 0;
    for (char c : line) commas += c == ',';
    CHECK(commas == 5);
  }
  CHECK(data_lines == 4);
}

}  // TEST_SUITE
