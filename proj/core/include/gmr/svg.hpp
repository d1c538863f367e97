#pragma once

#include <string>

#include "gmr/gmap.hpp"

namespace gmr {

struct SvgOptions {
    double scale = 100.0;
    double margin = 20.0;
};

/// Draws a 2-G-map: one filled polygon per ⟨α0 α1⟩-orbit, one segment per
/// ⟨α0 α2⟩-orbit and one dot per ⟨α1 α2⟩-orbit, each group ordered by the
/// smallest dart. Points come from the first point-sorted embedding, fills
/// from the first color-sorted one (grey when absent).
///
/// Throws Error when the map is not 2-dimensional, has no point embedding or
/// when a face walk breaks.
std::string render_svg(const GMap& g, const SvgOptions& options = {});

}  // namespace gmr
