#pragma once

#include <string>

#include "construct.hpp"

namespace brachyon {

// Peeks at the "kind" field of a JSON document: "group", "skew_brace",
// "solution", "rack", "construction_spec" or "involutive_spec".
std::string kind_of_text(const std::string& text);

// JSON emitters produce a single canonical line (compact dump plus newline),
// so equal objects serialize to identical bytes. Loaders accept any identity
// position and renumber so the identity sits at index 0.
std::string group_to_json(const GroupPtr& G);
GroupPtr group_from_json(const std::string& text);
std::string group_to_text(const GroupPtr& G);
std::string group_report(const GroupPtr& G);

std::string brace_to_json(const BracePtr& B);
BracePtr brace_from_json(const std::string& text);
std::string brace_to_text(const BracePtr& B);
std::string brace_report(const BracePtr& B);

std::string solution_to_json(const Solution& S);
Solution solution_from_json(const std::string& text); // shape checked only
std::string solution_to_text(const Solution& S);
std::string solution_report(const Solution& S);

std::string rack_to_json(const std::vector<std::vector<int>>& circ);
std::vector<std::vector<int>> rack_from_json(const std::string& text);
std::string rack_to_text(const std::vector<std::vector<int>>& circ);
std::string rack_report(const std::vector<std::vector<int>>& circ);

std::string spec_to_json(const ConstructionSpec& spec);
ConstructionSpec spec_from_json(const std::string& text);
std::string spec_to_text(const ConstructionSpec& spec);
std::string spec_report(const ConstructionSpec& spec);

std::string ispec_to_json(const InvolutiveSpec& spec);
InvolutiveSpec ispec_from_json(const std::string& text);
std::string ispec_to_text(const InvolutiveSpec& spec);
std::string ispec_report(const InvolutiveSpec& spec);

} // namespace brachyon
