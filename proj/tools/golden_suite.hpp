#pragma once

#include <ostream>
#include <string>

// Runs the golden anchors against the corpus in `dir`; one line per anchor.
// Returns false when an anchor fails.
bool run_golden_suite(const std::string& dir, std::ostream& out);
