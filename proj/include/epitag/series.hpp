#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "epitag/events.hpp"

namespace epitag {

// Windowed-average event rate on a uniform grid; the continuous proxy for the
// infected population.
struct IntensitySeries {
    std::string hashtag;
    std::string location;
    double start = 0.0;  // hours
    double step = 0.0;   // hours, > 0
    double window = 0.0; // smoothing window width in hours, > 0
    std::vector<double> values; // events/hour, size >= 2

    double time_at(std::size_t i) const { return start + static_cast<double>(i) * step; }
};

// The sub-series around the activity peak, clipped where the rate falls to
// fraction * peak on either side. The unit of fitting.
struct Occurrence {
    std::string hashtag;
    std::string location;
    double step = 0.0;
    double window = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    double peak_time = 0.0;
    double peak_value = 0.0;
    std::vector<double> values; // grid slice on [t1, t2]

    double time_at(std::size_t i) const { return t1 + static_cast<double>(i) * step; }
};

// Centered boxcar rate estimate: value at grid time t is the number of events
// in [t - window/2, t + window/2) divided by window. The grid spans
// [0, last event] inclusive; a single-point grid is padded to {value, 0}.
IntensitySeries smooth(const EventSeries& series, double window, double step);

// Three-step peak extraction: global maximum (earliest on ties), then the
// nearest grid times at or below fraction * peak on each side, clamped to the
// grid boundary when the series never drops that low.
Occurrence extract_occurrence(const IntensitySeries& series, double fraction = 0.01);

// (grid time, rate * window): the expected events per window compared
// against model I(t).
std::vector<std::pair<double, double>> occurrence_counts(const Occurrence& occ);

void write_intensity_csv(std::ostream& out, const IntensitySeries& series);
void write_occurrence_csv(std::ostream& out, const Occurrence& occ);

} // namespace epitag
