/// @file validator.hpp
/// Semantic checks over a structurally well-formed PolicyModel.

#pragma once

#include <vector>

#include "egen/ast.hpp"
#include "egen/diagnostics.hpp"

namespace egen {

/// Runs every semantic rule and returns the findings sorted by
/// (span start, code). Errors: V001 duplicate policy id, V002 duplicate
/// binding inside a block, V003 Threshold_Medium >= Threshold_High,
/// V004 threshold outside 1..=99, V005 zero SensingInterval. Warnings:
/// V006 two policies sharing a (state, level, appstate) triple, V007
/// thresholds differing across policies. Duplicate groups (V001, V002,
/// V006) flag every member so each offending line is visible.
std::vector<Diagnostic> validate(const PolicyModel& model);

} // namespace egen
