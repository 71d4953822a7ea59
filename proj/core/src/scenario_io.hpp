#pragma once

#include <iosfwd>

#include "fleet/scenarios.hpp"
#include "textio.hpp"

namespace fleet::scenario_io {

/// Sections [spec], [grid] or [graph], [requirements], [robot_types].
void write_spec_sections(std::ostream& os, const ScenarioSpec& spec);
ScenarioSpec read_spec_sections(const textio::Document& doc);

inline const char* const kSpecSections[] = {"spec", "grid", "graph", "requirements", "robot_types"};

}  // namespace fleet::scenario_io
