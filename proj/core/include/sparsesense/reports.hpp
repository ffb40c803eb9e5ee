#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sparsesense/cross_validation.hpp"
#include "sparsesense/latency.hpp"
#include "sparsesense/metrics.hpp"
#include "sparsesense/sweep.hpp"
#include "sparsesense/train.hpp"

namespace sparsesense {

/// Ordered key/value pairs appended as trailing columns to every report row.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

ConfigEcho echo_train_config(const TrainConfig& config);

// All reports are CSV with a fixed header line; floats use 9 significant digits.

/// scope,precision,recall,f1,support,predicted,degenerate[,echo...]
/// one row per class then a "macro" row whose support and predicted are totals.
std::string eval_report_csv(const EvalReport& report, const ActivitySpace& activities,
                            const ConfigEcho& echo = {});

/// true_label,<predicted class names...>
std::string confusion_csv(const EvalReport& report, const ActivitySpace& activities);

/// fold,train_segments,validation_segments,precision,recall,f1,accuracy[,echo...]
/// then "mean" and "std" rows.
std::string cv_summary_csv(const CvSummary& summary, const ConfigEcho& echo = {});

/// model,interp,window_len,drop_rate,seeds,precision,recall,f1,accuracy,segments[,echo...]
/// Excludes wall-clock latency so the file is reproducible.
std::string sweep_metrics_csv(const SweepResult& result, const ConfigEcho& echo = {});

/// model,interp,window_len,drop_rate,latency_ms_per_segment
std::string sweep_latency_csv(const SweepResult& result);

/// pipeline,batch_size,repetitions,warmups,mean_ms,std_ms
std::string latency_csv(const LatencyReport& report);

/// epoch,lr,loss
std::string loss_trace_csv(const std::vector<double>& trace, const TrainConfig& config);

}  // namespace sparsesense
