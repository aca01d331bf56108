#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tsf/foam.hpp"

namespace tsf {

struct AmplitudeModel {
    std::string name;
    double hbar = 1.0;
    double alpha = 0.0;
    std::function<double(const Rep&)> face_amp;
    std::function<double(const std::vector<Rep>&, const Intertwiner&)> edge_amp;
    std::function<double(const std::vector<Rep>&, const std::vector<Intertwiner>&)> vertex_amp;
    // omega from the Euler characteristics of the complex and of its source graph
    std::function<double(long long chi_sigma, long long chi_source)> weight;
};

AmplitudeModel trivial_model(double alpha = 0.0);
AmplitudeModel exp_area_model(double hbar = 1.0, double alpha = 0.0);
AmplitudeModel model_by_name(const std::string& name, double hbar = 1.0, double alpha = 0.0);

// sum over irreps of sqrt(j(j+1))
double area_term(const Rep& r);

// product over faces, generic edges and generic vertices, divided by the interior slice factors
double amplitude_comb(const TopspinFoam& foam, const AmplitudeModel& model);
double amplitude(const TopspinFoam& foam, const AmplitudeModel& model);
double normalized_amplitude(const TopspinFoam& foam, const AmplitudeModel& model);
// cylinder factor: product of face_amp over edges and edge_amp over vertices
double network_amplitude(const TopspinNetwork& net, const AmplitudeModel& model);

// the same quantities restricted to the marked subcomplex and marked subgraphs
double marked_network_amplitude(const TopspinNetwork& net, const AmplitudeModel& model);
double marked_normalized_amplitude(const TopspinFoam& foam, const AmplitudeModel& model);

}  // namespace tsf
