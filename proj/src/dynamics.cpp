#include "epitag/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "epitag/csv.hpp"
#include "epitag/errors.hpp"

namespace epitag {

std::string to_string(ModelKind kind) { return kind == ModelKind::Sir ? "sir" : "siri"; }

bool model_from_string(const std::string& name, ModelKind& out) {
    if (name == "sir" || name == "SIR") {
        out = ModelKind::Sir;
        return true;
    }
    if (name == "siri" || name == "SIRI") {
        out = ModelKind::Siri;
        return true;
    }
    return false;
}

bool ParamVector::valid() const {
    return std::isfinite(beta) && beta > 0.0 && std::isfinite(decay) && decay > 0.0 &&
           std::isfinite(s0) && s0 > 0.0 && std::isfinite(i0) && i0 >= 1.0 &&
           std::isfinite(sigma) && sigma > 0.0;
}

Deriv rhs_sir(double S, double I, double R, const ParamVector& p, double N) {
    (void)R;
    const double infection = p.beta * S * I / N;
    const double recovery = p.decay * I;
    return {-infection, infection - recovery, recovery};
}

Deriv rhs_siri(double S, double I, double R, const ParamVector& p, double N) {
    const double infection = p.beta * S * I / N;
    const double feedback = p.decay * I * R / N;
    return {-infection, infection - feedback, feedback};
}

double initial_recovered(ModelKind kind) { return kind == ModelKind::Sir ? 0.0 : 1.0; }

double reproduction_number(ModelKind kind, const ParamVector& p) {
    if (kind == ModelKind::Sir) return p.beta * p.s0 / (p.decay * (p.s0 + p.i0));
    return p.beta * p.s0 / p.decay;
}

namespace {

using State = std::array<double, 3>;

// Compartments a hair below zero (integration noise) are clamped before the
// vector field is evaluated.
State clamped(const State& y) {
    State c = y;
    for (double& v : c)
        if (v < 0.0) v = 0.0;
    return c;
}

State eval_rhs(ModelKind kind, const ParamVector& p, double N, const State& y) {
    const State c = clamped(y);
    const Deriv d = kind == ModelKind::Sir ? rhs_sir(c[0], c[1], c[2], p, N)
                                           : rhs_siri(c[0], c[1], c[2], p, N);
    return {d.dS, d.dI, d.dR};
}

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
// 5th-order minus embedded 4th-order weights.
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                 E6 = 22.0 / 525, E7 = -1.0 / 40;

struct StepResult {
    State y;
    State k_last; // FSAL stage, reusable as k1 of the next step
    double error; // scaled max norm
};

StepResult dopri_step(ModelKind kind, const ParamVector& p, double N, double t, double h,
                      const State& y, const State& k1, double rtol, double atol) {
    State y2, y3, y4, y5, y6, y7;
    State k2, k3, k4, k5, k6, k7;

    for (int i = 0; i < 3; ++i) y2[i] = y[i] + h * A21 * k1[i];
    k2 = eval_rhs(kind, p, N, y2);
    for (int i = 0; i < 3; ++i) y3[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
    k3 = eval_rhs(kind, p, N, y3);
    for (int i = 0; i < 3; ++i) y4[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
    k4 = eval_rhs(kind, p, N, y4);
    for (int i = 0; i < 3; ++i)
        y5[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
    k5 = eval_rhs(kind, p, N, y5);
    for (int i = 0; i < 3; ++i)
        y6[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
    k6 = eval_rhs(kind, p, N, y6);
    for (int i = 0; i < 3; ++i)
        y7[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
    k7 = eval_rhs(kind, p, N, y7);
    (void)C2;
    (void)C3;
    (void)C4;
    (void)C5;

    double err = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double e =
            h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        const double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(y7[i]));
        err = std::max(err, std::abs(e) / scale);
    }
    return {y7, k7, err};
}

std::string describe(const ParamVector& p, ModelKind kind) {
    std::ostringstream os;
    os << to_string(kind) << " beta=" << fmt_double(p.beta) << " decay=" << fmt_double(p.decay)
       << " s0=" << fmt_double(p.s0) << " i0=" << fmt_double(p.i0);
    return os.str();
}

} // namespace

Trajectory integrate(ModelKind kind, const ParamVector& p, std::span<const double> times,
                     double rtol, double atol) {
    const double r0 = initial_recovered(kind);
    Trajectory traj;
    traj.N = p.s0 + p.i0 + r0;
    traj.times.assign(times.begin(), times.end());
    traj.S.reserve(times.size());
    traj.I.reserve(times.size());
    traj.R.reserve(times.size());
    if (times.empty()) return traj;

    double t = times.front();
    State y = {p.s0, p.i0, r0};
    State k1 = eval_rhs(kind, p, traj.N, y);

    auto emit = [&](const State& s) {
        traj.S.push_back(s[0]);
        traj.I.push_back(s[1]);
        traj.R.push_back(s[2]);
    };
    emit(y);

    double h = 0.0;
    long steps = 0;
    constexpr long kMaxSteps = 2000000;

    for (std::size_t idx = 1; idx < times.size(); ++idx) {
        const double t_target = times[idx];
        if (t_target <= t + 1e-14 * std::max(1.0, std::abs(t))) {
            emit(y); // duplicate or near-duplicate output time
            continue;
        }
        if (h <= 0.0) h = (t_target - t) / 10.0;

        while (t < t_target) {
            if (++steps > kMaxSteps)
                throw IntegrationFailure("step budget exhausted at " + describe(p, kind));
            const double remaining = t_target - t;
            const bool clipped = h >= remaining;
            const double h_try = clipped ? remaining : h;
            if (h_try < 1e-14 * std::max(1.0, std::abs(t)))
                throw IntegrationFailure("step size underflow at " + describe(p, kind));

            const StepResult r = dopri_step(kind, p, traj.N, t, h_try, y, k1, rtol, atol);
            if (r.error <= 1.0) {
                t = clipped ? t_target : t + h_try;
                y = r.y;
                k1 = r.k_last;
                const double grow =
                    r.error <= 0.0 ? 5.0 : std::clamp(0.9 * std::pow(r.error, -0.2), 0.2, 5.0);
                h = h_try * grow;
            } else {
                h = h_try * std::clamp(0.9 * std::pow(r.error, -0.2), 0.2, 1.0);
            }
        }
        emit(y);
    }
    return traj;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t_hours,S,I,R\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        out << fmt_double(traj.times[i]) << ',' << fmt_double(traj.S[i]) << ','
            << fmt_double(traj.I[i]) << ',' << fmt_double(traj.R[i]) << '\n';
    }

} // namespace epitag
