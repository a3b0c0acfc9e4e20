#pragma once

#include <string>

#include "storyline/model.hpp"

namespace storyline {

struct RenderOptions {
    double row_height = 24.0;
    double instant_spacing = 48.0;
    double meeting_opacity = 0.25;
    bool labels = true;
};

// SVG drawing of a layout: one polyline per character across its lifespan,
// translucent rectangles over meeting member blocks. Deterministic for a
// fixed input. Throws std::invalid_argument if the layout is invalid.
std::string render_svg(const StorylineInstance& instance, const Layout& layout,
                       const RenderOptions& options = {});

}  // namespace storyline
