#include "epitag/series.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "epitag/csv.hpp"
#include "epitag/errors.hpp"

namespace epitag {

IntensitySeries smooth(const EventSeries& series, double window, double step) {
    if (!(window > 0.0)) throw InvalidWindow("window must be positive");
    if (!(step > 0.0) || step > window) throw InvalidWindow("step must be in (0, window]");

    std::vector<double> times = series.times;
    std::sort(times.begin(), times.end());

    IntensitySeries out;
    out.hashtag = series.hashtag;
    out.location = series.location;
    out.start = 0.0;
    out.step = step;
    out.window = window;

    const double span = times.empty() ? 0.0 : times.back();
    // Last grid point must reach the last event.
    std::size_t count = static_cast<std::size_t>(std::ceil(span / step - 1e-12)) + 1;
    if (count < 1) count = 1;

    out.values.reserve(count + 1);
    const double half = window / 2.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double t = out.time_at(i);
        auto lo = std::lower_bound(times.begin(), times.end(), t - half);
        auto hi = std::lower_bound(times.begin(), times.end(), t + half);
        out.values.push_back(static_cast<double>(hi - lo) / window);
    }
    if (out.values.size() < 2) out.values.push_back(0.0);
    return out;
}

Occurrence extract_occurrence(const IntensitySeries& series, double fraction) {
    const auto peak_it = std::max_element(series.values.begin(), series.values.end());
    if (peak_it == series.values.end() || *peak_it <= 0.0)
        throw AllZero("intensity series has no positive value");

    const std::size_t peak = static_cast<std::size_t>(peak_it - series.values.begin());
    const double threshold = fraction * *peak_it;

    std::size_t i1 = 0;
    bool found = false;
    for (std::size_t i = peak + 1; i-- > 0;) {
        if (series.values[i] <= threshold) {
            i1 = i;
            found = true;
            break;
        }
    }
    if (!found) i1 = 0;

    std::size_t i2 = series.values.size() - 1;
    found = false;
    for (std::size_t i = peak; i < series.values.size(); ++i) {
        if (series.values[i] <= threshold) {
            i2 = i;
            found = true;
            break;
        }
    }
    if (!found) i2 = series.values.size() - 1;

    Occurrence occ;
    occ.hashtag = series.hashtag;
    occ.location = series.location;
    occ.step = series.step;
    occ.window = series.window;
    occ.t1 = series.time_at(i1);
    occ.t2 = series.time_at(i2);
    occ.peak_time = series.time_at(peak);
    occ.peak_value = *peak_it;
    occ.values.assign(series.values.begin() + static_cast<std::ptrdiff_t>(i1),
                      series.values.begin() + static_cast<std::ptrdiff_t>(i2) + 1);
    return occ;
}

std::vector<std::pair<double, double>> occurrence_counts(const Occurrence& occ) {
    std::vector<std::pair<double, double>> counts;
    counts.reserve(occ.values.size());
    for (std::size_t i = 0; i < occ.values.size(); ++i)
        counts.emplace_back(occ.time_at(i), occ.values[i] * occ.window);
    return counts;
}

void write_intensity_csv(std::ostream& out, const IntensitySeries& series) {
    out << "t_hours,value\n";
    for (std::size_t i = 0; i < series.values.size(); ++i)
        out << fmt_double(series.time_at(i)) << ',' << fmt_double(series.values[i]) << '\n';
}

void write_occurrence_csv(std::ostream& out, const Occurrence& occ) {
    out << "# hashtag=" << occ.hashtag << " t1=" << fmt_double(occ.t1) << " t2=" << fmt_double(occ.t2)
        << " window=" << fmt_double(occ.window) << '\n';
    out << "t_hours,value\n";
    for (std::size_t i = 0; i < occ.values.size(); ++i)
        out << fmt_double(occ.time_at(i)) << ',' << fmt_double(occ.values[i]) << '\n';
}

} // namespace epitag
