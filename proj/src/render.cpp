#include "storyline/render.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace storyline {

namespace {

const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

std::string fmt(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

}  // namespace

std::string render_svg(const StorylineInstance& instance, const Layout& layout,
                       const RenderOptions& options) {
    ValidationReport report = validate_layout(instance, layout);
    if (!report.ok()) {
        throw std::invalid_argument("refusing to render an invalid layout:\n" + report.to_string());
    }
    const int tau = horizon(instance);
    const double margin_x = 60.0, margin_y = 24.0;
    auto x_of = [&](int t) { return margin_x + (t - 1) * options.instant_spacing; };
    auto y_of = [&](int rank) { return margin_y + rank * options.row_height; };

    int max_rank = 0;
    std::map<int, std::map<CharacterId, int>> rank;  // t -> character -> position
    for (const auto& [t, order] : layout.orders) {
        for (std::size_t i = 0; i < order.size(); ++i) {
            rank[t][order[i]] = static_cast<int>(i);
            max_rank = std::max(max_rank, static_cast<int>(i));
        }
    }

    const double width = x_of(std::max(tau, 1)) + margin_x;
    const double height = y_of(max_rank) + margin_y + options.row_height;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
        << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Meeting blocks first so the wires draw on top of them.
    for (const Meeting& m : instance.meetings) {
        for (int t = m.begin; t <= m.end; ++t) {
            auto it = rank.find(t);
            if (it == rank.end()) continue;
            int lo = max_rank + 1, hi = -1;
            for (const CharacterId& c : m.members) {
                auto rit = it->second.find(c);
                if (rit == it->second.end()) continue;
                lo = std::min(lo, rit->second);
                hi = std::max(hi, rit->second);
            }
            if (hi < lo) continue;
            const double pad = options.row_height * 0.4;
            svg << "<rect x=\"" << fmt(x_of(t) - options.instant_spacing * 0.25) << "\" y=\""
                << fmt(y_of(lo) - pad) << "\" width=\"" << fmt(options.instant_spacing * 0.5)
                << "\" height=\"" << fmt(y_of(hi) - y_of(lo) + 2 * pad)
                << "\" rx=\"4\" fill=\"#444444\" opacity=\"" << fmt(options.meeting_opacity)
                << "\"/>\n";
        }
    }

    std::vector<CharacterId> characters = instance.characters;
    std::sort(characters.begin(), characters.end());
    auto spans = derive_lifespans(instance);
    for (std::size_t i = 0; i < characters.size(); ++i) {
        const CharacterId& c = characters[i];
        const Lifespan& span = spans.at(c);
        const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (int t = span.first; t <= span.last; ++t) {
            svg << fmt(x_of(t)) << "," << fmt(y_of(rank.at(t).at(c)));
            if (t < span.last) svg << " ";
        }
        svg << "\"/>\n";
        if (options.labels) {
            svg << "<text x=\"" << fmt(x_of(span.first) - 8) << "\" y=\""
                << fmt(y_of(rank.at(span.first).at(c)) + 4)
                << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << c
                << "</text>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace storyline
