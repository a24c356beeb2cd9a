#include "thurston/curves.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace thurston {

namespace {

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> tmp;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(tmp));
    return tmp.empty();
}

bool compatible(const CurveClass& a, const CurveClass& b) {
    const auto& x = a.sides.inside;
    const auto& y = b.sides.inside;
    return disjoint(x, y) || subset(x, y) || subset(y, x);
}

} // namespace

bool partitions_laminar(const std::vector<CurveClass>& classes) {
    for (size_t i = 0; i < classes.size(); ++i)
        for (size_t j = i + 1; j < classes.size(); ++j)
            if (!compatible(classes[i], classes[j])) return false;
    return true;
}

Multicurve Multicurve::create(std::vector<CurveClass> classes, const MarkedSet& m) {
    std::sort(classes.begin(), classes.end());
    for (size_t i = 0; i + 1 < classes.size(); ++i)
        if (classes[i] == classes[i + 1]) throw error("duplicate curve class in multicurve");
    for (const auto& c : classes) {
        if (c.word.empty()) throw error("trivial curve in multicurve");
        if (peripheral_class_of(c.word, m)) throw error("peripheral curve in multicurve");
        if (c.sides.n != m.n()) throw error("curve class over the wrong marked set");
    }
    if (!partitions_laminar(classes))
        throw error("not realizable as disjoint system at partition level");
    Multicurve G;
    G.marked = m;
    G.members = std::move(classes);
    return G;
}

bool Multicurve::contains(const CurveClass& c) const { return index_of(c) >= 0; }

int Multicurve::index_of(const CurveClass& c) const {
    auto it = std::lower_bound(members.begin(), members.end(), c);
    if (it != members.end() && *it == c) return static_cast<int>(it - members.begin());
    return -1;
}

std::vector<std::vector<std::pair<CurveClass, int>>>
essential_lifts(const CoverPresentation& P, const Multicurve& G) {
    std::vector<std::vector<std::pair<CurveClass, int>>> out;
    out.reserve(G.members.size());
    for (const auto& g : G.members) {
        std::vector<std::pair<CurveClass, int>> row;
        for (const auto& comp : lift_curve(P, g))
            if (comp.kind == LiftKind::Essential)
                row.emplace_back(*comp.cls, comp.degree);
        out.push_back(std::move(row));
    }
    return out;
}

std::optional<CurveClass> unstable_witness(const CoverPresentation& P,
                                           const Multicurve& G) {
    for (const auto& row : essential_lifts(P, G))
        for (const auto& [cls, deg] : row)
            if (!G.contains(cls)) return cls;
    return std::nullopt;
}

bool is_stable(const CoverPresentation& P, const Multicurve& G) {
    return !unstable_witness(P, G).has_value();
}

namespace {

std::vector<CurveClass> lift_class_set(const CoverPresentation& P,
                                       const std::vector<CurveClass>& cur) {
    std::vector<CurveClass> next;
    for (const auto& c : cur)
        for (const auto& comp : lift_curve(P, c))
            if (comp.kind == LiftKind::Essential) next.push_back(*comp.cls);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    return next;
}

std::string set_key(const std::vector<CurveClass>& cs) {
    std::ostringstream os;
    for (const auto& c : cs) os << c.word.str() << '|';
    return os.str();
}

long long total_letters(const std::vector<CurveClass>& cs) {
    long long t = 0;
    for (const auto& c : cs) t += c.word.size();
    return t;
}

} // namespace

SaturationResult pullback_saturate(const CoverPresentation& P,
                                   std::vector<CurveClass> seeds,
                                   int max_iter, int max_size) {
    SaturationResult res;
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

    std::vector<std::vector<CurveClass>> history{seeds};
    std::map<std::string, int> seen{{set_key(seeds), 0}};

    for (int k = 0; k < max_iter; ++k) {
        std::vector<CurveClass> next = lift_class_set(P, history.back());
        res.iterations = k + 1;
        if (static_cast<int>(next.size()) > max_size) {
            res.note = "class set exceeded the size budget";
            return res;
        }
        if (total_letters(next) > 4096) {
            res.note = "word length exceeded the growth budget";
            return res;
        }
        auto [it, fresh] = seen.emplace(set_key(next), static_cast<int>(history.size()));
        if (!fresh) {
            int t = it->second;
            int period = static_cast<int>(history.size()) - t;
            if (period == 1) {
                res.status = SaturationResult::Status::Fixed;
                res.classes = std::move(next);
                res.period = 1;
            } else {
                res.status = SaturationResult::Status::Cycle;
                res.period = period;
                std::vector<CurveClass> uni;
                for (size_t s = static_cast<size_t>(t); s < history.size(); ++s)
                    uni.insert(uni.end(), history[s].begin(), history[s].end());
                std::sort(uni.begin(), uni.end());
                uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
                res.union_invariant = (lift_class_set(P, uni) == uni);
                res.classes = std::move(uni);
            }
            res.laminar = partitions_laminar(res.classes);
            return res;
        }
        history.push_back(std::move(next));
    }
    res.note = "iteration budget exhausted";
    return res;
}

int FaceTree::outer_face(int member) const {
    for (size_t f = 0; f < faces.size(); ++f) {
        if (static_cast<int>(f) == inner_face(member)) continue;
        for (int b : faces[f].boundary)
            if (b == member) return static_cast<int>(f);
    }
    throw error("face tree inconsistency");
}

int FaceTree::face_of_marked(int j) const {
    for (size_t f = 0; f < faces.size(); ++f)
        for (int p : faces[f].marked)
            if (p == j) return static_cast<int>(f);
    throw error("marked point missing from face tree");
}

std::vector<int> FaceTree::branch_marked(int face, int member) const {
    const Face& f = faces[static_cast<size_t>(face)];
    if (std::find(f.boundary.begin(), f.boundary.end(), member) == f.boundary.end())
        throw error("curve does not bound this face");
    const auto& inside = members[static_cast<size_t>(member)].sides.inside;
    if (f.enclosing == member) {
        std::vector<int> out;
        for (int j = 1; j <= n; ++j)
            if (!std::binary_search(inside.begin(), inside.end(), j)) out.push_back(j);
        return out;
    }
    return inside;
}

FaceTree face_structure(const Multicurve& G, const MarkedSet& m) {
    if (!partitions_laminar(G.members))
        throw error("not realizable as disjoint system at partition level");

    const int cnt = G.size();
    const int n = m.n();
    // i strictly encloses j; equal inside-sets stack by canonical word.
    auto encloses = [&](int i, int j) {
        const auto& xi = G.members[static_cast<size_t>(i)].sides.inside;
        const auto& xj = G.members[static_cast<size_t>(j)].sides.inside;
        if (xi == xj)
            return word_less(G.members[static_cast<size_t>(i)].word,
                             G.members[static_cast<size_t>(j)].word);
        return subset(xj, xi);
    };

    std::vector<int> parent(static_cast<size_t>(cnt), -1);
    for (int j = 0; j < cnt; ++j) {
        int best = -1;
        for (int i = 0; i < cnt; ++i) {
            if (i == j || !encloses(i, j)) continue;
            if (best == -1 || encloses(best, i)) best = i;
        }
        parent[static_cast<size_t>(j)] = best;
    }

    FaceTree T;
    T.n = n;
    T.members = G.members;
    T.faces.resize(static_cast<size_t>(cnt) + 1);

    std::vector<std::vector<int>> children(static_cast<size_t>(cnt));
    for (int j = 0; j < cnt; ++j) {
        if (parent[static_cast<size_t>(j)] == -1)
            T.faces[0].boundary.push_back(j);
        else
            children[static_cast<size_t>(parent[static_cast<size_t>(j)])].push_back(j);
    }
    T.faces[0].enclosing = -1;

    for (int i = 0; i < cnt; ++i) {
        Face& f = T.faces[static_cast<size_t>(i) + 1];
        f.enclosing = i;
        f.boundary.push_back(i);
        for (int c : children[static_cast<size_t>(i)]) f.boundary.push_back(c);
    }

    // Interior marked points: inside the face's enclosing curve (or the
    // whole sphere for the root) minus everything inside its children.
    for (size_t fi = 0; fi < T.faces.size(); ++fi) {
        Face& f = T.faces[fi];
        std::set<int> interior;
        if (f.enclosing == -1) {
            for (int j = 1; j <= n; ++j) interior.insert(j);
        } else {
            const auto& x = G.members[static_cast<size_t>(f.enclosing)].sides.inside;
            interior.insert(x.begin(), x.end());
        }
        for (int b : f.boundary) {
            if (b == f.enclosing) continue;
            for (int j : G.members[static_cast<size_t>(b)].sides.inside) interior.erase(j);
        }
        f.marked.assign(interior.begin(), interior.end());
    }
    return T;
}

bool partition_contained(const FaceTree& T, const CurveClass& c) {
    std::set<int> inside(c.sides.inside.begin(), c.sides.inside.end());
    for (size_t fi = 0; fi < T.faces.size(); ++fi) {
        const Face& f = T.faces[fi];
        bool ok = true;
        std::set<int> covered;
        for (int b : f.boundary) {
            auto branch = T.branch_marked(static_cast<int>(fi), b);
            bool in = true, out = true;
            for (int j : branch) {
                if (inside.count(j)) out = false;
                else in = false;
            }
            if (in && !branch.empty()) covered.insert(branch.begin(), branch.end());
            else if (!out) { ok = false; break; }
        }
        if (!ok) continue;
        std::set<int> fm(f.marked.begin(), f.marked.end());
        for (int j : inside)
            if (!covered.count(j) && !fm.count(j)) { ok = false; break; }
        if (ok) return true;
    }
    return false;
}

} // namespace thurston
