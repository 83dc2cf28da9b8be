#pragma once

#include <jcqt/sweep.hpp>

#include <string>
#include <vector>

namespace jcqt {

/// A named parameter set reproducing one panel of the reference figures.
/// All presets share n = 2, phi = 0 and the default tau window [0, 20]
/// with 2000 points.
struct FigurePreset {
    std::string id;           // "fig1a" .. "fig10c"
    std::string description;  // what the panel shows
    SweepSpec spec;
};

const std::vector<FigurePreset>& figure_presets();

/// Throws ValidationError for unknown ids.
const FigurePreset& find_preset(const std::string& id);

}  // namespace jcqt
