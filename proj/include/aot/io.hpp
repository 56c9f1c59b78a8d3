#pragma once

#include <filesystem>
#include <string>

#include "aot/amortize.hpp"
#include "aot/eval.hpp"
#include "aot/measures.hpp"
#include "aot/tasks.hpp"

namespace aot {

// Binary formats, all little-endian:
//   AOTM measure: magic "AOTM", u32 version=1, u8 domain, u32 n, u32 d,
//                 n*d f64 atoms row-major, n f64 weights.
//   AOTP plan:    magic "AOTP", u32 version=1, u32 n, u32 m, f64 epsilon,
//                 n*m f64 row-major.
//   AOTW model:   magic "AOTW", u32 version=1, u8 family, u8 trained_by,
//                 u32 L, u32 d, f64 epsilon, f64 lambda, L*d f64 thetas,
//                 L f64 omega. The family byte names the slicing pipeline:
//                 0 = linear/sqeuclidean, 1 = stereographic/geodesic,
//                 2 = linear/euclidean.

void save_measure(const DiscreteMeasure& measure,
                  const std::filesystem::path& path);
DiscreteMeasure load_measure(const std::filesystem::path& path);

void save_plan(const TransportPlan& plan, const std::filesystem::path& path);
TransportPlan load_plan(const std::filesystem::path& path);

void save_model(const AmortizedModel& model, const std::filesystem::path& path);
AmortizedModel load_model(const std::filesystem::path& path);

void write_measure_csv(const DiscreteMeasure& measure,
                       const std::filesystem::path& path);
void write_plan_csv(const TransportPlan& plan,
                    const std::filesystem::path& path);
// 8-bit PGM heatmap, entries scaled by the max entry.
void write_plan_pgm(const TransportPlan& plan,
                    const std::filesystem::path& path);

void write_text_file(const std::string& text, const std::filesystem::path& path);

// Flat "key = value" config; '#' starts a comment. Keys mirror TaskSpec and
// Hyper (see README). Unknown keys are rejected.
struct RunConfig {
  TaskSpec task;
  Hyper hyper;
  std::string echo;  // normalized key=value lines for report embedding
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::filesystem::path& path);

}  // namespace aot
