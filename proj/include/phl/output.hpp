// output.hpp — deterministic JSON / CSV serialization of results

#pragma once

#include <string>
#include <vector>

#include "phl/current.hpp"
#include "phl/oracle.hpp"

namespace phl {

// Shortest round-trip decimal form of v (std::to_chars): locale-independent
// and bit-faithful, so identical runs produce identical bytes.
std::string format_double(double v);

// One (eps_left, eps_right, transmission) sample of a kernel map.
struct TransmissionSample {
    double eps_left = 0.0;
    double eps_right = 0.0;
    double transmission = 0.0;
};

std::vector<TransmissionSample> transmission_map(const TransmissionKernel& kernel,
                                                 const std::vector<double>& eps_left,
                                                 const std::vector<double>& eps_right);

// JSON documents (pretty-printed, trailing newline, insertion-ordered keys).
std::string breakdown_json(const CurrentBreakdown& b);
std::string sweep_json(const char* axis, const std::vector<SweepPoint>& points);
std::string transmission_json(const std::vector<TransmissionSample>& samples);
std::string comparison_json(const OracleComparison& c);

// CSV documents: comma separator, '.' decimal point, header row, LF endings.
std::string breakdown_csv(const CurrentBreakdown& b);
std::string sweep_csv(const char* axis, const std::vector<SweepPoint>& points);
std::string transmission_csv(const std::vector<TransmissionSample>& samples);
std::string comparison_csv(const OracleComparison& c);

} // namespace phl
