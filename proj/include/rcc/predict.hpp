#pragma once
// Analytic throughput predictions for 2-user scenarios, built from the
// AND-OR models. Used by the analyze verb to emit rows aligned with the
// simulator's sweep output.

#include "rcc/config.hpp"

namespace rcc {

struct ThroughputPrediction {
    double throughput = 0.0;
    bool complete = false;
    double frames = 0.0;  // fractional TFs until predicted destination decode
};

// Smallest received-symbol count n such that the single-user AND-OR fixed
// point leaves at most `target_unrecovered` of the k symbols undecoded.
double single_user_required(const DegreeDistribution& dist, double k,
                            double target_unrecovered = 1.0);

ThroughputPrediction predict_throughput(const ScenarioConfig& cfg);

}  // namespace rcc
