#include "thurston/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace thurston {

namespace {

using njson = nlohmann::ordered_json;

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

bool is_directive(const std::string& tok) {
    return tok == "degree" || tok == "marked" || tok == "dynamics" || tok == "perm" ||
           tok == "rest" || tok == "assign" || tok == "multicurve";
}

struct LineError {
    std::string name;
    int line;

    [[noreturn]] void fail(const std::string& msg) const {
        throw error(name + ":" + std::to_string(line) + ": " + msg);
    }
};

int parse_count(const LineError& at, const std::string& tok, const char* what) {
    if (tok.empty() || tok.size() > 9) at.fail(std::string("bad ") + what + " `" + tok + "`");
    int v = 0;
    for (char ch : tok) {
        if (ch < '0' || ch > '9') at.fail(std::string("bad ") + what + " `" + tok + "`");
        v = v * 10 + (ch - '0');
    }
    if (v <= 0) at.fail(std::string(what) + " must be positive");
    return v;
}

// Parenthesized cycles like "(1 2) (4 5)" or "(1 2)(4 5)".
std::vector<std::vector<int>> parse_cycles(const LineError& at, const std::string& text,
                                           int degree) {
    std::vector<std::vector<int>> cycles;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != '(') at.fail("expected `(` in cycle list");
        ++i;
        std::vector<int> cyc;
        for (;;) {
            skip_ws();
            if (i >= text.size()) at.fail("unterminated cycle");
            if (text[i] == ')') {
                ++i;
                break;
            }
            int v = 0;
            size_t start = i;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                v = v * 10 + (text[i] - '0');
                if (v > degree) break;
                ++i;
            }
            if (i == start) at.fail("expected a sheet number in cycle");
            if (v < 1 || v > degree)
                at.fail("sheet " + std::to_string(v) + " out of range 1.." +
                        std::to_string(degree));
            cyc.push_back(v);
        }
        if (cyc.empty()) at.fail("empty cycle");
        cycles.push_back(std::move(cyc));
        skip_ws();
    }
    return cycles;
}

// Rotate a cycle so its least entry comes first, preserving cyclic order.
std::vector<int> min_first(std::vector<int> cyc) {
    auto it = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), it, cyc.end());
    return cyc;
}

void check_word_range(const LineError& at, const Word& w, int n) {
    for (int l : w.letters) {
        int idx = l < 0 ? -l : l;
        if (idx > n - 1)
            at.fail("word letter g" + std::to_string(idx) + " out of range for " +
                    std::to_string(n) + " marked points");
    }
}

} // namespace

PresentationFile parse_presentation_file(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;

    int degree = 0;
    std::vector<std::string> labels;
    std::vector<int> dynamics;
    std::vector<Permutation> head_perms;
    std::vector<char> perm_seen;
    std::vector<std::vector<Word>> rows;
    std::vector<std::vector<char>> rest_seen;
    std::vector<std::vector<int>> assigns;
    std::vector<char> assign_seen;
    std::vector<CurveClass> multicurve;
    bool saw_degree = false, saw_marked = false, saw_dynamics = false, in_multicurve = false;

    MarkedSet marked;
    auto label_index = [&](const LineError& at, const std::string& lab) {
        int j = marked.index_of(lab);
        if (j == 0) at.fail("unknown marked point `" + lab + "`");
        return j;
    };

    while (std::getline(in, raw)) {
        ++lineno;
        LineError at{name, lineno};
        std::string line = strip_comment(raw);
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        const std::string& head = toks[0];

        if (!is_directive(head)) {
            if (!in_multicurve) at.fail("unknown directive `" + head + "`");
            Word w;
            try {
                w = Word::parse(line);
            } catch (const error& e) {
                at.fail(e.what());
            }
            check_word_range(at, w, marked.n());
            try {
                multicurve.push_back(canonical_curve_class(w, marked));
            } catch (const error& e) {
                at.fail(e.what());
            }
            continue;
        }
        in_multicurve = false;

        if (head == "degree") {
            if (saw_degree) at.fail("duplicate `degree` line");
            if (toks.size() != 2) at.fail("expected `degree N`");
            degree = parse_count(at, toks[1], "degree");
            saw_degree = true;
        } else if (head == "marked") {
            if (saw_marked) at.fail("duplicate `marked` line");
            if (toks.size() < 3) at.fail("need at least two marked points");
            std::set<std::string> seen;
            for (size_t t = 1; t < toks.size(); ++t) {
                if (!seen.insert(toks[t]).second)
                    at.fail("duplicate marked point `" + toks[t] + "`");
                labels.push_back(toks[t]);
            }
            marked.labels = labels;
            int n = marked.n();
            dynamics.assign(static_cast<size_t>(n), 0);
            head_perms.assign(static_cast<size_t>(n - 1), Permutation{});
            perm_seen.assign(static_cast<size_t>(n - 1), 0);
            assigns.assign(static_cast<size_t>(n), {});
            assign_seen.assign(static_cast<size_t>(n), 0);
            saw_marked = true;
        } else if (head == "dynamics") {
            if (!saw_marked) at.fail("`dynamics` before `marked`");
            if (saw_dynamics) at.fail("duplicate `dynamics` line");
            for (size_t t = 1; t < toks.size(); ++t) {
                auto gt = toks[t].find('>');
                if (gt == std::string::npos || gt == 0 || gt + 1 >= toks[t].size())
                    at.fail("expected `from>to`, got `" + toks[t] + "`");
                int from = label_index(at, toks[t].substr(0, gt));
                int to = label_index(at, toks[t].substr(gt + 1));
                if (dynamics[static_cast<size_t>(from - 1)] != 0)
                    at.fail("`" + labels[static_cast<size_t>(from - 1)] + "` mapped twice");
                dynamics[static_cast<size_t>(from - 1)] = to;
            }
            for (size_t j = 0; j < dynamics.size(); ++j)
                if (dynamics[j] == 0) at.fail("dynamics line missing `" + labels[j] + "`");
            saw_dynamics = true;
        } else if (head == "perm") {
            if (!saw_marked || !saw_degree) at.fail("`perm` before `degree` and `marked`");
            if (toks.size() < 2) at.fail("expected `perm POINT cycles...`");
            int j = label_index(at, toks[1]);
            if (j == marked.n())
                at.fail("the permutation of `" + toks[1] + "` is derived and must be omitted");
            if (perm_seen[static_cast<size_t>(j - 1)])
                at.fail("duplicate `perm` line for `" + toks[1] + "`");
            auto rest_of_line = line.substr(line.find(toks[1]) + toks[1].size());
            auto cycles = parse_cycles(at, rest_of_line, degree);
            Permutation p = Permutation::identity(degree);
            std::vector<char> used(static_cast<size_t>(degree), 0);
            for (const auto& cyc : cycles) {
                for (size_t t = 0; t < cyc.size(); ++t) {
                    if (used[static_cast<size_t>(cyc[t] - 1)])
                        at.fail("sheet " + std::to_string(cyc[t]) + " appears twice");
                    used[static_cast<size_t>(cyc[t] - 1)] = 1;
                    p.img[static_cast<size_t>(cyc[t] - 1)] = cyc[(t + 1) % cyc.size()];
                }
            }
            head_perms[static_cast<size_t>(j - 1)] = std::move(p);
            perm_seen[static_cast<size_t>(j - 1)] = 1;
        } else if (head == "rest") {
            if (!saw_marked || !saw_degree) at.fail("`rest` before `degree` and `marked`");
            if (toks.size() < 3) at.fail("expected `rest POINT SHEET: word`");
            int j = label_index(at, toks[1]);
            if (j == marked.n())
                at.fail("the derived point `" + toks[1] + "` has no restriction row");
            if (toks[2].empty() || toks[2].back() != ':')
                at.fail("expected `SHEET:`, got `" + toks[2] + "`");
            int k = parse_count(at, toks[2].substr(0, toks[2].size() - 1), "sheet");
            if (k > degree)
                at.fail("sheet " + std::to_string(k) + " out of range 1.." +
                        std::to_string(degree));
            if (rows.empty()) {
                rows.assign(static_cast<size_t>(marked.n() - 1),
                            std::vector<Word>(static_cast<size_t>(degree)));
                rest_seen.assign(static_cast<size_t>(marked.n() - 1),
                                 std::vector<char>(static_cast<size_t>(degree), 0));
            }
            if (rest_seen[static_cast<size_t>(j - 1)][static_cast<size_t>(k - 1)])
                at.fail("duplicate `rest` line for `" + toks[1] + "` sheet " +
                        std::to_string(k));
            auto colon = line.find(toks[2]) + toks[2].size();
            Word w;
            try {
                w = Word::parse(line.substr(colon));
            } catch (const error& e) {
                at.fail(e.what());
            }
            check_word_range(at, w, marked.n());
            rows[static_cast<size_t>(j - 1)][static_cast<size_t>(k - 1)] = std::move(w);
            rest_seen[static_cast<size_t>(j - 1)][static_cast<size_t>(k - 1)] = 1;
        } else if (head == "assign") {
            if (!saw_marked || !saw_degree || !saw_dynamics)
                at.fail("`assign` before `degree`, `marked`, and `dynamics`");
            // assign SOURCE = TARGET@(cycle)
            if (toks.size() < 4 || toks[2] != "=") at.fail("expected `assign POINT = POINT@(cycle)`");
            int j = label_index(at, toks[1]);
            if (assign_seen[static_cast<size_t>(j - 1)])
                at.fail("duplicate `assign` line for `" + toks[1] + "`");
            auto eq = line.find('=');
            auto tail = line.substr(eq + 1);
            auto atsign = tail.find('@');
            if (atsign == std::string::npos) at.fail("expected `TARGET@(cycle)`");
            auto target_toks = tokens_of(tail.substr(0, atsign));
            if (target_toks.size() != 1) at.fail("expected one target point before `@`");
            int target = label_index(at, target_toks[0]);
            if (target != dynamics[static_cast<size_t>(j - 1)])
                at.fail("assign target `" + target_toks[0] + "` does not match dynamics (`" +
                        labels[static_cast<size_t>(dynamics[static_cast<size_t>(j - 1)] - 1)] +
                        "`)");
            auto cycles = parse_cycles(at, tail.substr(atsign + 1), degree);
            if (cycles.size() != 1) at.fail("expected exactly one cycle after `@`");
            std::set<int> dedup(cycles[0].begin(), cycles[0].end());
            if (dedup.size() != cycles[0].size()) at.fail("cycle repeats a sheet");
            assigns[static_cast<size_t>(j - 1)] = min_first(cycles[0]);
            assign_seen[static_cast<size_t>(j - 1)] = 1;
        } else { // multicurve
            if (!saw_marked) at.fail("`multicurve` before `marked`");
            if (toks.size() != 1) at.fail("`multicurve` takes no arguments; words follow below");
            in_multicurve = true;
        }
    }

    if (!saw_degree) throw error(name + ": missing `degree` line");
    if (!saw_marked) throw error(name + ": missing `marked` line");
    if (!saw_dynamics) throw error(name + ": missing `dynamics` line");
    for (size_t j = 0; j < assign_seen.size(); ++j)
        if (!assign_seen[j]) throw error(name + ": missing assign line for `" + labels[j] + "`");
    if (rows.empty())
        rows.assign(static_cast<size_t>(marked.n() - 1),
                    std::vector<Word>(static_cast<size_t>(degree)));
    for (auto& p : head_perms)
        if (p.img.empty()) p = Permutation::identity(degree);

    PresentationFile out;
    try {
        out.cover = make_cover(degree, labels, dynamics, head_perms, rows, assigns);
    } catch (const error& e) {
        throw error(name + ": " + e.what());
    }
    out.multicurve = std::move(multicurve);
    return out;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open `" + path + "`");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

PresentationFile load_presentation_file(const std::string& path) {
    return parse_presentation_file(read_file(path), path);
}

CoverPresentation load_presentation(const std::string& path) {
    return load_presentation_file(path).cover;
}

std::string presentation_text(const CoverPresentation& P,
                              const std::vector<CurveClass>& multicurve) {
    std::ostringstream out;
    out << "degree " << P.degree << "\n";
    out << "marked";
    for (const auto& lab : P.marked.labels) out << " " << lab;
    out << "\n";
    out << "dynamics";
    for (int j = 1; j <= P.n(); ++j)
        out << " " << P.marked.labels[static_cast<size_t>(j - 1)] << ">"
            << P.marked.labels[static_cast<size_t>(P.delta(j) - 1)];
    out << "\n";
    for (int i = 1; i < P.n(); ++i) {
        out << "perm " << P.marked.labels[static_cast<size_t>(i - 1)];
        for (const auto& cyc : P.sigma(i).cycles()) {
            if (cyc.size() < 2) continue;
            out << " (";
            for (size_t t = 0; t < cyc.size(); ++t) out << (t ? " " : "") << cyc[t];
            out << ")";
        }
        out << "\n";
    }
    for (int i = 1; i < P.n(); ++i)
        for (int k = 1; k <= P.degree; ++k) {
            out << "rest " << P.marked.labels[static_cast<size_t>(i - 1)] << " " << k << ":";
            const Word& w = P.restriction(i, k);
            if (!w.empty()) out << " " << w.str();
            out << "\n";
        }
    for (int j = 1; j <= P.n(); ++j) {
        out << "assign " << P.marked.labels[static_cast<size_t>(j - 1)] << " = "
            << P.marked.labels[static_cast<size_t>(P.delta(j) - 1)] << "@(";
        const auto& cyc = P.assigned_cycle(j);
        for (size_t t = 0; t < cyc.size(); ++t) out << (t ? " " : "") << cyc[t];
        out << ")\n";
    }
    if (!multicurve.empty()) {
        out << "multicurve\n";
        for (const auto& c : multicurve) out << c.word.str() << "\n";
    }
    return out.str();
}

void save_presentation(const CoverPresentation& P, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write `" + path + "`");
    out << presentation_text(P);
}

std::vector<CurveClass> parse_curves(const std::string& text, const std::string& name,
                                     const MarkedSet& m) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::vector<CurveClass> out;
    while (std::getline(in, raw)) {
        ++lineno;
        LineError at{name, lineno};
        std::string line = strip_comment(raw);
        if (tokens_of(line).empty()) continue;
        Word w;
        try {
            w = Word::parse(line);
        } catch (const error& e) {
            at.fail(e.what());
        }
        check_word_range(at, w, m.n());
        try {
            out.push_back(canonical_curve_class(w, m));
        } catch (const error& e) {
            at.fail(e.what());
        }
    }
    return out;
}

std::vector<CurveClass> load_curves(const std::string& path, const MarkedSet& m) {
    return parse_curves(read_file(path), path, m);
}

std::string curves_text(const std::vector<CurveClass>& curves) {
    std::string out;
    for (const auto& c : curves) {
        out += c.word.str();
        out += "\n";
    }
    return out;
}

std::string report_json(const Analysis& a) {
    njson j;
    {
        njson mat;
        njson labels = njson::array();
        for (const auto& c : a.matrix.labels) labels.push_back(c.word.str());
        njson entries = njson::array();
        for (const auto& row : a.matrix.entries) {
            njson r = njson::array();
            for (const auto& x : row) r.push_back(rat_to_string(x));
            entries.push_back(std::move(r));
        }
        mat["labels"] = std::move(labels);
        mat["entries"] = std::move(entries);
        j["matrix"] = std::move(mat);
    }
    j["lambda_lower"] = rat_to_string(a.bounds.lower);
    j["lambda_upper"] = rat_to_string(a.bounds.upper);
    j["decision"] = decision_text(a.bounds.decision);
    j["irreducible"] = a.irreducible;
    {
        njson cycles = njson::array();
        for (const auto& cyc : a.levy.cycles) {
            njson c;
            c["members"] = cyc.members;
            njson wits = njson::array();
            for (const auto& w : cyc.witnesses) wits.push_back(w.str());
            c["witnesses"] = std::move(wits);
            c["classification"] = cyc.classification;
            cycles.push_back(std::move(c));
        }
        j["levy_cycles"] = std::move(cycles);
    }
    if (a.case_report) {
        j["case"] = case_text(a.case_report->kind);
        if (a.case_report->ambiguous) j["case_notes"] = a.case_report->notes;
    } else {
        j["case"] = nullptr;
        j["case_error"] = a.case_error;
    }
    if (a.theorem) {
        j["verdict"] = a.theorem->verdict;
        if (a.theorem->witness) {
            njson w;
            w["members"] = a.theorem->witness->members;
            njson wits = njson::array();
            for (const auto& ww : a.theorem->witness->witnesses) wits.push_back(ww.str());
            w["witnesses"] = std::move(wits);
            j["verdict_witness"] = std::move(w);
        }
        if (!a.theorem->diagnostics.empty()) j["verdict_diagnostics"] = a.theorem->diagnostics;
    } else {
        j["verdict"] = nullptr;
        j["verdict_error"] = a.theorem_error;
    }
    {
        njson eigen;
        njson wit = njson::array();
        for (const auto& x : a.bounds.witness) wit.push_back(rat_to_string(x));
        eigen["witness"] = std::move(wit);
        eigen["witness_members"] = a.bounds.witness_members;
        j["eigenvalue_certificate"] = std::move(eigen);
    }
    {
        njson sweep;
        sweep["confirmed"] = a.sweep.confirmed;
        njson blocks = njson::array();
        for (const auto& b : a.sweep.blocks) {
            njson blk;
            blk["members"] = b.members;
            blk["lambda_lower"] = rat_to_string(b.bounds.lower);
            blk["lambda_upper"] = rat_to_string(b.bounds.upper);
            blk["decision"] = decision_text(b.bounds.decision);
            blk["levy_cycle_count"] = b.levy_cycles.size();
            blk["hamiltonian_levy"] = b.hamiltonian_levy();
            blocks.push_back(std::move(blk));
        }
        sweep["blocks"] = std::move(blocks);
        if (!a.sweep.diagnostics.empty()) sweep["diagnostics"] = a.sweep.diagnostics;
        j["sweep"] = std::move(sweep);
    }
    if (a.structure) {
        njson items = njson::array();
        for (const auto& it : a.structure->items) {
            njson item;
            item["name"] = it.name;
            item["pass"] = it.pass;
            item["detail"] = it.detail;
            items.push_back(std::move(item));
        }
        j["structural_checks"] = std::move(items);
    } else {
        j["structural_checks"] = nullptr;
    }
    return j.dump(2) + "\n";
}

} // namespace thurston
