#pragma once

#include <stdexcept>
#include <string>

#include "storyline/model.hpp"

namespace storyline::io {

// Raised for malformed input files; `code` is machine-readable (either a
// JSON syntax indicator or a validator code such as MEETING_TIME_ORDER).
struct FormatError : std::runtime_error {
    std::string code;
    FormatError(std::string code_, const std::string& message)
        : std::runtime_error(message), code(std::move(code_)) {}
};

// Parsing validates; serialization is canonical (sorted keys, characters
// and members sorted, meetings sorted by (begin, end, members), layout
// entries sorted by instant), so serialize(parse(x)) is a fixed point.
StorylineInstance parse_instance(const std::string& text);
std::string serialize_instance(const StorylineInstance& instance);

ExtensionProblem parse_problem(const std::string& text);
std::string serialize_problem(const ExtensionProblem& problem);

Layout parse_layout(const std::string& text);
std::string serialize_layout(const Layout& layout);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace storyline::io
