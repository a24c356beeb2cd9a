#pragma once

#include <string>
#include <vector>

#include "thurston/obstruction.hpp"

namespace thurston {

// A parsed presentation file: the cover plus the optional multicurve
// block (empty when the block is absent).
struct PresentationFile {
    CoverPresentation cover;
    std::vector<CurveClass> multicurve;
};

// Line-oriented plain text with `#` comments. Parse errors carry the
// source name and line number. Only shape is enforced here; semantic
// invariants stay validate_presentation's job, so a well-formed but
// dishonest file still loads.
PresentationFile parse_presentation_file(const std::string& text, const std::string& name);
PresentationFile load_presentation_file(const std::string& path);
CoverPresentation load_presentation(const std::string& path);

// Exact serialization: every permutation and restriction line is printed
// explicitly, identities included, so a load of the output reproduces the
// presentation field for field and a second save is byte-identical.
std::string presentation_text(const CoverPresentation& P,
                              const std::vector<CurveClass>& multicurve = {});
void save_presentation(const CoverPresentation& P, const std::string& path);

// Curves files: one canonical word per line, same comment rules.
std::vector<CurveClass> parse_curves(const std::string& text, const std::string& name,
                                     const MarkedSet& m);
std::vector<CurveClass> load_curves(const std::string& path, const MarkedSet& m);
std::string curves_text(const std::vector<CurveClass>& curves);

// Structured analysis report as JSON text. Keys are stable; rationals
// are rendered exactly as numerator/denominator strings.
std::string report_json(const Analysis& a);

} // namespace thurston
