#include "storyline/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace storyline::io {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError("JSON_SYNTAX", e.what());
    }
}

std::vector<CharacterId> id_list(const json& node, const char* what) {
    if (!node.is_array()) throw FormatError("BAD_SHAPE", std::string(what) + " must be an array");
    std::vector<CharacterId> ids;
    for (const auto& item : node) {
        if (!item.is_string()) {
            throw FormatError("BAD_SHAPE", std::string(what) + " entries must be strings");
        }
        ids.push_back(item.get<std::string>());
    }
    return ids;
}

StorylineInstance instance_from_json(const json& node) {
    if (!node.is_object() || !node.contains("characters") || !node.contains("meetings")) {
        throw FormatError("BAD_SHAPE", "instance needs 'characters' and 'meetings'");
    }
    StorylineInstance instance;
    instance.characters = id_list(node["characters"], "characters");
    std::sort(instance.characters.begin(), instance.characters.end());
    for (const auto& m : node["meetings"]) {
        if (!m.is_object() || !m.contains("members") || !m.contains("begin") || !m.contains("end")) {
            throw FormatError("BAD_SHAPE", "meeting needs 'members', 'begin' and 'end'");
        }
        Meeting meeting;
        meeting.members = id_list(m["members"], "members");
        std::sort(meeting.members.begin(), meeting.members.end());
        if (!m["begin"].is_number_integer() || !m["end"].is_number_integer()) {
            throw FormatError("BAD_SHAPE", "meeting times must be integers");
        }
        meeting.begin = m["begin"].get<int>();
        meeting.end = m["end"].get<int>();
        instance.meetings.push_back(std::move(meeting));
    }
    std::sort(instance.meetings.begin(), instance.meetings.end(),
              [](const Meeting& a, const Meeting& b) {
                  return std::tie(a.begin, a.end, a.members) < std::tie(b.begin, b.end, b.members);
              });
    return instance;
}

json instance_to_json(const StorylineInstance& instance) {
    StorylineInstance canonical = instance;
    std::sort(canonical.characters.begin(), canonical.characters.end());
    for (Meeting& m : canonical.meetings) std::sort(m.members.begin(), m.members.end());
    std::sort(canonical.meetings.begin(), canonical.meetings.end(),
              [](const Meeting& a, const Meeting& b) {
                  return std::tie(a.begin, a.end, a.members) < std::tie(b.begin, b.end, b.members);
              });
    json node;
    node["characters"] = canonical.characters;
    node["meetings"] = json::array();
    for (const Meeting& m : canonical.meetings) {
        node["meetings"].push_back({{"members", m.members}, {"begin", m.begin}, {"end", m.end}});
    }
    return node;
}

Layout layout_from_json(const json& node) {
    if (!node.is_array()) throw FormatError("BAD_SHAPE", "layout must be an array of {t, order}");
    Layout layout;
    for (const auto& entry : node) {
        if (!entry.is_object() || !entry.contains("t") || !entry.contains("order")) {
            throw FormatError("BAD_SHAPE", "layout entry needs 't' and 'order'");
        }
        int t = entry["t"].get<int>();
        if (layout.orders.count(t)) {
            throw FormatError("DUPLICATE_INSTANT", "two orders for instant " + std::to_string(t));
        }
        layout.orders[t] = id_list(entry["order"], "order");
    }
    return layout;
}

json layout_to_json(const Layout& layout) {
    json node = json::array();
    for (const auto& [t, order] : layout.orders) {
        if (order.empty()) continue;
        node.push_back({{"t", t}, {"order", order}});
    }
    return node;
}

void require_valid(const ValidationReport& report) {
    if (!report.ok()) {
        throw FormatError(report.violations.front().code, report.to_string());
    }
}

}  // namespace

StorylineInstance parse_instance(const std::string& text) {
    StorylineInstance instance = instance_from_json(parse_json(text));
    require_valid(validate_instance(instance));
    return instance;
}

std::string serialize_instance(const StorylineInstance& instance) {
    return instance_to_json(instance).dump(2) + "\n";
}

ExtensionProblem parse_problem(const std::string& text) {
    json node = parse_json(text);
    if (!node.is_object() || !node.contains("instance") || !node.contains("chi") ||
        !node.contains("fixed_characters") || !node.contains("fixed_layout")) {
        throw FormatError("BAD_SHAPE",
                          "problem needs 'instance', 'chi', 'fixed_characters', 'fixed_layout'");
    }
    ExtensionProblem problem;
    problem.full = instance_from_json(node["instance"]);
    if (!node["chi"].is_number_integer()) throw FormatError("BAD_SHAPE", "chi must be an integer");
    problem.chi = node["chi"].get<int>();
    problem.fixed_characters = id_list(node["fixed_characters"], "fixed_characters");
    std::sort(problem.fixed_characters.begin(), problem.fixed_characters.end());
    problem.fixed_layout = layout_from_json(node["fixed_layout"]);
    require_valid(validate_extension_problem(problem));
    return problem;
}

std::string serialize_problem(const ExtensionProblem& problem) {
    ExtensionProblem canonical = problem;
    std::sort(canonical.fixed_characters.begin(), canonical.fixed_characters.end());
    json node;
    node["instance"] = instance_to_json(canonical.full);
    node["chi"] = canonical.chi;
    node["fixed_characters"] = canonical.fixed_characters;
    node["fixed_layout"] = layout_to_json(canonical.fixed_layout);
    return node.dump(2) + "\n";
}

Layout parse_layout(const std::string& text) { return layout_from_json(parse_json(text)); }

std::string serialize_layout(const Layout& layout) { return layout_to_json(layout).dump(2) + "\n"; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("IO_ERROR", "cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("IO_ERROR", "cannot write '" + path + "'");
    out << content;
}

}  // namespace storyline::io
