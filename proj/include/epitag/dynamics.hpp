#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace epitag {

enum class ModelKind { Sir, Siri };

std::string to_string(ModelKind kind);
bool model_from_string(const std::string& name, ModelKind& out);

// Point in parameter space. decay is the recovery rate gamma for SIR and the
// feedback rate nu for SIRI; sigma is the observation-noise scale.
struct ParamVector {
    double beta = 0.0;  // 1/hour
    double decay = 0.0; // 1/hour
    double s0 = 0.0;    // persons
    double i0 = 0.0;    // persons, >= 1
    double sigma = 0.0; // counts

    std::array<double, 5> to_array() const { return {beta, decay, s0, i0, sigma}; }
    static ParamVector from_array(const std::array<double, 5>& a) {
        return {a[0], a[1], a[2], a[3], a[4]};
    }
    bool valid() const;
};

struct Deriv {
    double dS = 0.0, dI = 0.0, dR = 0.0;
};

// dS = -beta*S*I/N, dI = +beta*S*I/N - gamma*I, dR = +gamma*I
Deriv rhs_sir(double S, double I, double R, const ParamVector& p, double N);

// dS = -beta*S*I/N, dI = +beta*S*I/N - nu*I*R/N, dR = +nu*I*R/N
// (the /N in dR keeps S+I+R conserved).
Deriv rhs_siri(double S, double I, double R, const ParamVector& p, double N);

// Recovered population starts at 0 for SIR and 1 for SIRI (the SIRI feedback
// term is identically zero from R = 0).
double initial_recovered(ModelKind kind);

struct Trajectory {
    std::vector<double> times; // hours
    std::vector<double> S, I, R;
    double N = 0.0; // s0 + i0 + r0
};

// Adaptive Dormand-Prince 4(5) with steps landing exactly on the requested
// output times. Throws IntegrationFailure on step underflow.
Trajectory integrate(ModelKind kind, const ParamVector& p, std::span<const double> times,
                     double rtol = 1e-6, double atol = 1e-8);

// SIR: beta*s0/(gamma*N) with N = s0 + i0. SIRI: beta*s0/nu (initial R = 1).
double reproduction_number(ModelKind kind, const ParamVector& p);

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

} // namespace epitag
