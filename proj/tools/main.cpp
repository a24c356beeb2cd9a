// Command line front end. Every subcommand prints one JSON document on
// stdout; human-oriented errors go to stderr. Exit codes: 0 success,
// 1 usage, 2 unreadable or invalid input, 3 analysis precondition not
// met, 4 counterexample flag raised.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "thurston/corpus.hpp"
#include "thurston/fuzz.hpp"
#include "thurston/generator.hpp"
#include "thurston/io.hpp"
#include "thurston/obstruction.hpp"

using json = nlohmann::ordered_json;
using namespace thurston;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kBadInput = 2;
constexpr int kPrecondition = 3;
constexpr int kFlag = 4;

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

int fail(int code, const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return code;
}

std::string kind_text(LiftKind k) {
    switch (k) {
        case LiftKind::Trivial: return "trivial";
        case LiftKind::Peripheral: return "peripheral";
        case LiftKind::Essential: return "essential";
    }
    return "?";
}

std::string status_text(SaturationResult::Status s) {
    switch (s) {
        case SaturationResult::Status::Fixed: return "fixed";
        case SaturationResult::Status::Cycle: return "cycle";
        case SaturationResult::Status::Timeout: return "timeout";
    }
    return "?";
}

json word_list(const std::vector<CurveClass>& classes) {
    json arr = json::array();
    for (const auto& c : classes) arr.push_back(c.word.str());
    return arr;
}

// The multicurve for a command: an explicit curves file wins, otherwise
// the block embedded in the presentation file.
std::vector<CurveClass> resolve_curves(const PresentationFile& pf,
                                       const std::string& curves_path) {
    if (!curves_path.empty()) return load_curves(curves_path, pf.cover.marked);
    return pf.multicurve;
}

int cmd_validate(const std::string& file) {
    PresentationFile pf;
    try {
        pf = load_presentation_file(file);
    } catch (const std::exception& e) {
        return fail(kBadInput, e.what());
    }
    auto rep = validate_presentation(pf.cover);
    auto products = detail::peripheral_condition_failures(pf.cover);
    bool pass = rep.pass() && products.empty();

    json items = json::array();
    for (const auto& item : rep.items)
        items.push_back({{"name", item.name}, {"pass", item.pass}, {"detail", item.detail}});
    emit({{"command", "validate"},
          {"file", file},
          {"pass", pass},
          {"items", items},
          {"restriction_products", {{"pass", products.empty()}, {"failures", products}}}});
    return pass ? kOk : kBadInput;
}

int cmd_lift(const std::string& file, const std::string& curve) {
    PresentationFile pf;
    CurveClass c;
    try {
        pf = load_presentation_file(file);
        c = canonical_curve_class(Word::parse(curve), pf.cover.marked);
    } catch (const std::exception& e) {
        return fail(kBadInput, e.what());
    }
    json comps = json::array();
    for (const auto& comp : lift_curve(pf.cover, c)) {
        json entry = {{"word", comp.word.str()},
                      {"degree", comp.degree},
                      {"kind", kind_text(comp.kind)},
                      {"sheets", comp.cycle_sheets}};
        entry["peripheral_at"] = comp.kind == LiftKind::Peripheral
                                     ? json(pf.cover.marked.labels[static_cast<size_t>(
                                           comp.peripheral_at - 1)])
                                     : json();
        entry["class"] = comp.cls ? json(comp.cls->word.str()) : json();
        comps.push_back(entry);
    }
    emit({{"command", "lift"}, {"file", file}, {"curve", c.word.str()}, {"components", comps}});
    return kOk;
}

int cmd_faces(const std::string& file, const std::string& curves_path) {
    PresentationFile pf;
    std::vector<CurveClass> classes;
    try {
        pf = load_presentation_file(file);
        classes = resolve_curves(pf, curves_path);
    } catch (const std::exception& e) {
        return fail(kBadInput, e.what());
    }
    if (classes.empty())
        return fail(kUsage, "no multicurve: pass --multicurve or embed a multicurve block");
    FaceTree tree;
    try {
        tree = face_structure(Multicurve::create(classes, pf.cover.marked), pf.cover.marked);
    } catch (const std::exception& e) {
        return fail(kBadInput, e.what());
    }
    json faces = json::array();
    for (int f = 0; f < static_cast<int>(tree.faces.size()); ++f) {
        const Face& face = tree.faces[static_cast<size_t>(f)];
        json marked = json::array();
        for (int j : face.marked)
            marked.push_back(pf.cover.marked.labels[static_cast<size_t>(j - 1)]);
        faces.push_back({{"boundary", face.boundary},
                         {"marked", marked},
                         {"enclosing", face.enclosing},
                         {"disk", tree.is_disk(f)}});
    }
    emit({{"command", "faces"},
          {"file", file},
          {"members", word_list(tree.members)},
          {"faces", faces}});
    return kOk;
}

int cmd_saturate(const std::string& file, const std::vector<std::string>& seed_words,
                 int max_iter, int max_size) {
    PresentationFile pf;
    std::vector<CurveClass> seeds;
    try {
        pf = load_presentation_file(file);
        for (const auto& w : seed_words)
            seeds.push_back(canonical_curve_class(Word::parse(w), pf.cover.marked));
    } catch (const std::exception& e) {
        return fail(kBadInput, e.what());
    }
    if (seeds.empty()) seeds = standard_seed_classes(pf.cover);
    auto r = pullback_saturate(pf.cover, seeds, max_iter, max_size);
    emit({{"command", "saturate"},
          {"file", file},
          {"seeds", word_list(seeds)},
          {"status", status_text(r.status)},
          {"iterations", r.iterations},
          {"period", r.period},
          {"union_invariant", r.union_invariant},
          {"laminar", r.laminar},
          {"classes", word_list(r.classes)},
          {"note", r.note}});
    return kOk;
}

int cmd_analyze(const std::string& file, const std::string& curves_path, int depth,
                const std::string& report_path) {
    PresentationFile pf;
    std::vector<CurveClass> classes;
    try {
        pf = load_presentation_file(file);
        classes = resolve_curves(pf, curves_path);
    } catch (const std::exception& e) {
        return fail(kBadInput, e.what());
    }
    if (classes.empty())
        return fail(kUsage, "no multicurve: pass --multicurve or embed a multicurve block");
    Analysis a;
    try {
        a = analyze_multicurve(pf.cover, Multicurve::create(classes, pf.cover.marked), depth);
    } catch (const std::exception& e) {
        return fail(kPrecondition, e.what());
    }
    std::string doc = report_json(a);
    std::cout << doc;
    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) return fail(kBadInput, "cannot write `" + report_path + "`");
        out << doc;
    }
    bool flagged = (a.theorem && !a.theorem->confirmed()) || !a.sweep.confirmed;
    return flagged ? kFlag : kOk;
}

int cmd_verify(const std::vector<std::string>& files, const std::string& curves_path,
               int depth) {
    json results = json::array();
    int worst = kOk;
    for (const auto& file : files) {
        json row = {{"file", file}};
        PresentationFile pf;
        std::vector<CurveClass> classes;
        try {
            pf = load_presentation_file(file);
            classes = resolve_curves(pf, curves_path);
        } catch (const std::exception& e) {
            row["error"] = e.what();
            results.push_back(row);
            worst = std::max(worst, kBadInput);
            continue;
        }
        try {
            if (classes.empty()) throw error("multicurve is empty");
            auto G = Multicurve::create(classes, pf.cover.marked);
            auto verdict = verify_main_theorem(pf.cover, G);
            row["verdict"] = verdict.verdict;
            if (verdict.witness) {
                json witnesses = json::array();
                for (const auto& w : verdict.witness->witnesses) witnesses.push_back(w.str());
                row["witness"] = {{"members", verdict.witness->members},
                                  {"witnesses", witnesses},
                                  {"classification",
                                   classify_levy(pf.cover, G, *verdict.witness, depth).label}};
            }
            row["diagnostics"] = verdict.diagnostics;
            if (!verdict.confirmed()) worst = std::max(worst, kFlag);
        } catch (const std::exception& e) {
            row["error"] = e.what();
            worst = std::max(worst, kPrecondition);
        }
        results.push_back(row);
    }
    emit({{"command", "verify"}, {"results", results}});
    return worst;
}

int cmd_fuzz(int count, unsigned long long seed, int depth) {
    if (const char* env = std::getenv("THURSTON_KIT_SEED")) {
        try {
            seed = std::stoull(env);
        } catch (const std::exception&) {
            return fail(kUsage, "THURSTON_KIT_SEED is not an integer");
        }
    }
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.count = count;
    auto instances = generate_random_cubic_two_fixed(cfg);

    int saturations = 0, timeouts = 0, unstable = 0, nonlaminar = 0;
    int multicurves = 0, obstructed = 0, undecided = 0;
    json labels = json::object();
    json flagged = json::array();
    std::map<std::string, int> label_totals;
    for (int i = 0; i < static_cast<int>(instances.size()); ++i) {
        auto out = fuzz_presentation(instances[static_cast<size_t>(i)], depth);
        saturations += out.saturations;
        timeouts += out.timeouts;
        unstable += out.unstable;
        nonlaminar += out.nonlaminar;
        multicurves += out.multicurves;
        obstructed += out.obstructed_blocks;
        undecided += out.undecided_blocks;
        for (const auto& [label, n] : out.cycle_labels) label_totals[label] += n;
        if (!out.flags.empty())
            flagged.push_back({{"index", i},
                               {"presentation", presentation_text(instances[static_cast<size_t>(i)])},
                               {"flags", out.flags}});
    }
    for (const auto& [label, n] : label_totals) labels[label] = n;
    emit({{"command", "fuzz"},
          {"count", count},
          {"seed", seed},
          {"depth", depth},
          {"saturations", saturations},
          {"timeouts", timeouts},
          {"unstable", unstable},
          {"nonlaminar", nonlaminar},
          {"multicurves", multicurves},
          {"obstructed_blocks", obstructed},
          {"undecided_blocks", undecided},
          {"cycle_labels", labels},
          {"flagged", flagged}});
    return flagged.empty() ? kOk : kFlag;
}

int cmd_corpus_list() {
    json entries = json::array();
    for (const auto& e : corpus()) {
        json expect = {{"valid", e.expect_valid},
                       {"obstructed", e.expect_obstructed},
                       {"levy", e.expect_levy}};
        expect["case"] = e.expect_case ? json(case_text(*e.expect_case)) : json();
        entries.push_back({{"name", e.name},
                           {"file", e.file},
                           {"curves", word_list(e.curves)},
                           {"expect", expect},
                           {"note", e.note}});
    }
    emit({{"command", "corpus-list"}, {"entries", entries}});
    return kOk;
}

int cmd_corpus_run() {
    json checks = json::array();
    bool all_pass = true;
    bool theorem_level = false;
    for (const auto& c : run_corpus()) {
        checks.push_back(
            {{"entry", c.entry}, {"check", c.check}, {"pass", c.pass}, {"detail", c.detail}});
        if (!c.pass) {
            all_pass = false;
            if (c.check == "levy" || c.check == "verdict") theorem_level = true;
        }
    }
    emit({{"command", "corpus-run"}, {"pass", all_pass}, {"checks", checks}});
    if (all_pass) return kOk;
    return theorem_level ? kFlag : kBadInput;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"obstruction and Levy cycle analysis for branched cover presentations"};
    app.require_subcommand(1);

    std::string file, curve, curves_path, report_path;
    std::vector<std::string> files, seed_words;
    int depth = 3, max_iter = 64, max_size = 256, count = 100;
    unsigned long long seed = 0;

    auto* validate = app.add_subcommand("validate", "check a presentation file");
    validate->add_option("file", file, "presentation file")->required();

    auto* lift = app.add_subcommand("lift", "preimage components of one curve");
    lift->add_option("file", file, "presentation file")->required();
    lift->add_option("--curve", curve, "curve word, e.g. \"g1 g2\"")->required();

    auto* faces = app.add_subcommand("faces", "complement structure of a multicurve");
    faces->add_option("file", file, "presentation file")->required();
    faces->add_option("--multicurve", curves_path, "curves file, one word per line");

    auto* saturate = app.add_subcommand("saturate", "iterate essential lifts to a limit");
    saturate->add_option("file", file, "presentation file")->required();
    saturate->add_option("--seed", seed_words, "seed curve word (repeatable)");
    saturate->add_option("--max-iter", max_iter, "iteration budget");
    saturate->add_option("--max-size", max_size, "class set size budget");

    auto* analyze = app.add_subcommand("analyze", "full report for one multicurve");
    analyze->add_option("file", file, "presentation file")->required();
    analyze->add_option("--multicurve", curves_path, "curves file, one word per line");
    analyze->add_option("--depth", depth, "Levy classification depth");
    analyze->add_option("--report", report_path, "also write the report here");

    auto* verify = app.add_subcommand("verify", "theorem verdict per presentation");
    verify->add_option("files", files, "presentation files")->required()->expected(-1);
    verify->add_option("--multicurve", curves_path, "curves file applied to every input");
    verify->add_option("--depth", depth, "Levy classification depth");

    auto* fuzz = app.add_subcommand("fuzz", "generate instances and hunt counterexamples");
    fuzz->add_option("--count", count, "number of instances");
    fuzz->add_option("--seed", seed, "generator seed (THURSTON_KIT_SEED overrides)");
    fuzz->add_option("--depth", depth, "Levy classification depth");

    auto* corpus_cmd = app.add_subcommand("corpus", "shipped example presentations");
    corpus_cmd->require_subcommand(1);
    auto* corpus_list = corpus_cmd->add_subcommand("list", "entry names and expectations");
    auto* corpus_run = corpus_cmd->add_subcommand("run", "check every expectation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(file);
        if (lift->parsed()) return cmd_lift(file, curve);
        if (faces->parsed()) return cmd_faces(file, curves_path);
        if (saturate->parsed()) return cmd_saturate(file, seed_words, max_iter, max_size);
        if (analyze->parsed()) return cmd_analyze(file, curves_path, depth, report_path);
        if (verify->parsed()) return cmd_verify(files, curves_path, depth);
        if (fuzz->parsed()) return cmd_fuzz(count, seed, depth);
        if (corpus_list->parsed()) return cmd_corpus_list();
        if (corpus_run->parsed()) return cmd_corpus_run();
    } catch (const std::exception& e) {
        return fail(kBadInput, e.what());
    }
    return kUsage;
}
