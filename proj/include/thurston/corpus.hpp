#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thurston/obstruction.hpp"

namespace thurston {

// One shipped example: the presentation, the interesting multicurve when
// there is one, and the properties the test suite re-verifies on every
// build. The file path points at the serialized copy under corpus/.
struct CorpusEntry {
    std::string name;
    std::string file;
    CoverPresentation cover;
    std::vector<CurveClass> curves;
    bool expect_valid = true;
    bool expect_obstructed = false;
    bool expect_levy = false;
    std::optional<ObstructionCase> expect_case;
    std::string note;
};

const std::vector<CorpusEntry>& corpus();

struct CorpusCheck {
    std::string entry;
    std::string check;
    bool pass = false;
    std::string detail;
};

// Re-derives every expected property from scratch. Everything must pass
// on every build; a red row here means the library changed behavior.
std::vector<CorpusCheck> run_corpus();

} // namespace thurston
