#pragma once

#include <cmath>
#include <vector>

#include "r4curv/flow.hpp"

namespace r4curv {

struct WindingResult {
    double index = 0.0;    // rounded to the field's quantum (1/2 lines, 1/4 crosses)
    double residual = 0.0; // |raw - rounded|, before rounding
    double raw = 0.0;
};

// Total rotation of a direction field along a closed loop, divided by 2*pi.
// angles(t) must return every candidate angle of the field at loop point t
// (any representatives; they are reduced mod `period`). The lift follows the
// nearest candidate; a jump close to half a period means tracking is lost.
inline WindingResult winding_index(const std::function<std::vector<double>(double)>& angles,
                                   double period, int samples = 720) {
    auto reduce = [&](double a) {
        double r = std::fmod(a, period);
        if (r < 0) r += period;
        return r;
    };

    std::vector<double> first = angles(0.0);
    if (first.empty()) throw SingularOnLoop("field undefined on the loop");
    double phi = reduce(first.front());
    double start = phi;

    for (int i = 1; i <= samples; ++i) {
        double t = static_cast<double>(i) / samples;
        std::vector<double> cand = angles(t);
        if (cand.empty()) throw SingularOnLoop("field undefined on the loop");
        double best = 0.0;
        double best_gap = std::numeric_limits<double>::infinity();
        for (double a : cand) {
            double r = reduce(a);
            // nearest lift of r relative to phi
            double k = std::round((phi - r) / period);
            double lifted = r + k * period;
            double gap = std::abs(lifted - phi);
            if (gap < best_gap) {
                best_gap = gap;
                best = lifted;
            }
        }
        if (best_gap > 0.5 * period - 1e-9)
            throw IndexUnresolved("direction lift jumped by half a period");
        phi = best;
    }

    WindingResult w;
    w.raw = (phi - start) / (2.0 * M_PI);
    double quantum = period / (2.0 * M_PI);
    double rounded = std::round(w.raw / quantum) * quantum;
    w.residual = std::abs(w.raw - rounded);
    if (w.residual >= 0.1) throw IndexUnresolved("winding far from an admissible index");
    w.index = rounded;
    return w;
}

// Index of a surface line field around a chart circle of radius r at (u0,v0).
inline WindingResult singularity_index(const SurfaceDef& s, const FieldSampler& field,
                                       LineField kind, double u0, double v0, double r,
                                       int samples = 720) {
    auto angles = [&](double t) {
        double a = 2.0 * M_PI * t;
        double u = u0 + r * std::cos(a), v = v0 + r * std::sin(a);
        std::vector<double> out;
        std::vector<TangentDirection> cand;
        try {
            cand = field(u, v);
        } catch (const std::runtime_error&) {
            throw SingularOnLoop("field evaluation failed on the loop");
        }
        out.reserve(cand.size());
        for (const auto& d : cand) out.push_back(d.chart_angle());
        return out;
    };
    return winding_index(angles, field_period(kind), samples);
}

} // namespace r4curv
