#include "thurston/obstruction.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <utility>

namespace thurston {

namespace {

std::vector<std::vector<bool>> support_of(const std::vector<std::vector<Rat>>& e) {
    size_t n = e.size();
    std::vector<std::vector<bool>> s(n, std::vector<bool>(n, false));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) s[i][j] = e[i][j] != 0;
    return s;
}

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Marked points whose image lies in `target` (sorted); exactly the marked
// points falling into some preimage component of the disk over `target`.
std::vector<int> preimage_marked(const CoverPresentation& P, const std::vector<int>& target) {
    std::vector<int> out;
    for (int z = 1; z <= P.n(); ++z)
        if (std::binary_search(target.begin(), target.end(), P.delta(z))) out.push_back(z);
    return out;
}

// Elementary directed cycles, each reported once, rooted and rotated to
// start at its least vertex. Adjacency lists must be sorted.
std::vector<std::vector<int>> elementary_cycles(const std::vector<std::vector<int>>& adj,
                                                size_t budget) {
    int n = static_cast<int>(adj.size());
    std::vector<std::vector<int>> out;
    std::vector<char> onpath(static_cast<size_t>(n), 0);
    std::vector<int> path;
    std::function<void(int, int)> walk = [&](int s, int u) {
        for (int v : adj[static_cast<size_t>(u)]) {
            if (v == s) {
                out.push_back(path);
                if (out.size() > budget) throw error("Levy cycle enumeration exceeded the budget");
            } else if (v > s && !onpath[static_cast<size_t>(v)]) {
                onpath[static_cast<size_t>(v)] = 1;
                path.push_back(v);
                walk(s, v);
                path.pop_back();
                onpath[static_cast<size_t>(v)] = 0;
            }
        }
    };
    for (int s = 0; s < n; ++s) {
        std::fill(onpath.begin(), onpath.end(), 0);
        onpath[static_cast<size_t>(s)] = 1;
        path.assign(1, s);
        walk(s, s);
    }
    return out;
}

std::vector<Rat> mat_vec(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& v) {
    size_t n = a.size();
    std::vector<Rat> out(n, Rat(0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (a[i][j] != 0) out[i] += a[i][j] * v[j];
    return out;
}

// All leading principal minors of (I - B/t) positive. For nonnegative B
// this is exactly rho(B) < t: I - B/t is then a nonsingular M-matrix.
// Pivots are taken in order; a nonpositive running determinant settles
// the question immediately, and a zero pivot can only occur then.
bool rho_below(const std::vector<std::vector<Rat>>& b, const Rat& t) {
    size_t m = b.size();
    std::vector<std::vector<Rat>> a(m, std::vector<Rat>(m, Rat(0)));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            a[i][j] = (i == j ? Rat(1) : Rat(0)) - b[i][j] / t;
    Rat det(1);
    for (size_t k = 0; k < m; ++k) {
        Rat lead = det * a[k][k];
        if (lead <= 0) return false;
        for (size_t r = k + 1; r < m; ++r) {
            if (a[r][k] == 0) continue;
            Rat f = a[r][k] / a[k][k];
            for (size_t c = k; c < m; ++c) a[r][c] -= f * a[k][c];
        }
        det = lead;
    }
    return true;
}

// One-dimensional sign-definite kernel of (B - I), if any. Such a vector
// has Bv = v exactly, pinning both ratio bounds to 1; mixed signs mean 1
// is an eigenvalue but not the leading one.
std::optional<std::vector<Rat>> positive_unit_kernel(const std::vector<std::vector<Rat>>& b) {
    size_t m = b.size();
    std::vector<std::vector<Rat>> a(m, std::vector<Rat>(m, Rat(0)));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            a[i][j] = b[i][j] - (i == j ? Rat(1) : Rat(0));
    std::vector<int> pivot_col(m, -1);
    size_t row = 0;
    for (size_t col = 0; col < m && row < m; ++col) {
        size_t sel = row;
        while (sel < m && a[sel][col] == 0) ++sel;
        if (sel == m) continue;
        std::swap(a[sel], a[row]);
        Rat p = a[row][col];
        for (size_t c = col; c < m; ++c) a[row][c] /= p;
        for (size_t r = 0; r < m; ++r) {
            if (r == row || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (size_t c = col; c < m; ++c) a[r][c] -= f * a[row][c];
        }
        pivot_col[row] = static_cast<int>(col);
        ++row;
    }
    if (m - row != 1) return std::nullopt;
    std::vector<char> is_pivot(m, 0);
    for (size_t r = 0; r < row; ++r) is_pivot[static_cast<size_t>(pivot_col[r])] = 1;
    size_t freec = 0;
    while (freec < m && is_pivot[freec]) ++freec;
    std::vector<Rat> v(m, Rat(0));
    v[freec] = 1;
    for (size_t r = 0; r < row; ++r)
        v[static_cast<size_t>(pivot_col[r])] = -a[r][freec];
    bool pos = true, neg = true;
    for (const Rat& x : v) {
        if (x <= 0) pos = false;
        if (x >= 0) neg = false;
    }
    if (neg)
        for (Rat& x : v) x = -x;
    else if (!pos)
        return std::nullopt;
    std::vector<Rat> bv = mat_vec(b, v);
    for (size_t i = 0; i < m; ++i)
        if (bv[i] != v[i]) return std::nullopt;
    return v;
}

struct BlockBounds {
    Rat lower = 0;
    Rat upper = 0;
    LambdaDecision decision = LambdaDecision::Undecided;
    std::vector<Rat> witness;
};

// Certify one irreducible diagonal block. The minors test fixes the side
// of 1 exactly; a sign-definite kernel vector settles equality; otherwise
// ratio iteration with the aperiodic shift B+I produces the certifying
// vector. Once decided, the bracket is narrowed to `tol` by exact
// threshold probes, which bisect without ever touching floating point.
BlockBounds certify_block(const std::vector<std::vector<Rat>>& b, const Rat& tol) {
    size_t m = b.size();
    BlockBounds out;
    if (m == 1) {
        out.lower = out.upper = b[0][0];
        out.decision = b[0][0] >= 1 ? LambdaDecision::AtLeastOne : LambdaDecision::LessThanOne;
        out.witness = {Rat(1)};
        return out;
    }
    bool below = rho_below(b, Rat(1));
    if (!below) {
        if (auto v = positive_unit_kernel(b)) {
            out.lower = out.upper = 1;
            out.decision = LambdaDecision::AtLeastOne;
            out.witness = *v;
            return out;
        }
    }
    std::vector<Rat> v(m, Rat(1));
    bool have = false;
    Rat lower(0), upper(0);
    std::vector<Rat> vec_lo, vec_hi;
    unsigned long cap_den = 1000000000000UL;
    int stall = 0;
    bool decided = false;
    for (int iter = 0; iter < 4000; ++iter) {
        std::vector<Rat> bv = mat_vec(b, v);
        Rat lo = bv[0] / v[0], hi = lo;
        for (size_t i = 1; i < m; ++i) {
            Rat r = bv[i] / v[i];
            if (r < lo) lo = r;
            if (r > hi) hi = r;
        }
        bool improved = false;
        if (!have || lo > lower) {
            lower = lo;
            vec_lo = v;
            improved = true;
        }
        if (!have || hi < upper) {
            upper = hi;
            vec_hi = v;
            improved = true;
        }
        have = true;
        decided = below ? (upper < 1) : (lower >= 1);
        if (decided) break;
        if (!improved && ++stall > 24) {
            if (cap_den >= 1000000000000000000UL) break;
            cap_den *= 64;
            stall = 0;
        }
        Rat mx(0);
        for (size_t i = 0; i < m; ++i) {
            bv[i] += v[i];
            if (bv[i] > mx) mx = bv[i];
        }
        for (size_t i = 0; i < m; ++i) {
            bv[i] /= mx;
            bv[i] = rat_limit_den(bv[i], cap_den);
            if (bv[i] <= 0) bv[i] = Rat(1, 1000000000L);
        }
        v = std::move(bv);
    }
    out.lower = lower;
    out.upper = upper;
    if (below && upper < 1) {
        out.decision = LambdaDecision::LessThanOne;
        out.witness = vec_hi;
    } else if (!below && lower >= 1) {
        out.decision = LambdaDecision::AtLeastOne;
        out.witness = vec_lo;
    }
    if (out.decision != LambdaDecision::Undecided && out.upper - out.lower > tol) {
        Rat a = out.lower, z = out.upper;
        while (z - a > tol) {
            Rat mid = (a + z) / 2;
            if (mid <= 0) break;
            if (rho_below(b, mid))
                z = mid;
            else
                a = mid;
        }
        out.lower = a;
        out.upper = z;
    }
    return out;
}

} // namespace

std::string decision_text(LambdaDecision d) {
    switch (d) {
    case LambdaDecision::AtLeastOne: return "lambda >= 1";
    case LambdaDecision::LessThanOne: return "lambda < 1";
    default: return "undecided";
    }
}

std::string case_text(ObstructionCase c) {
    switch (c) {
    case ObstructionCase::NewtonLike: return "newton-like";
    case ObstructionCase::QuadraticLike: return "quadratic-like";
    default: return "removable-levy";
    }
}

TransitionMatrix transition_matrix(const CoverPresentation& P, const Multicurve& G) {
    if (auto w = unstable_witness(P, G))
        throw error("multicurve is not stable: essential lift class `" + w->word.str() +
                    "` is not a member");
    TransitionMatrix M;
    M.labels = G.members;
    int n = G.size();
    M.entries.assign(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
    auto lifts = essential_lifts(P, G);
    for (int j = 0; j < n; ++j)
        for (const auto& [cls, deg] : lifts[static_cast<size_t>(j)]) {
            int i = G.index_of(cls);
            M.entries[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                Rat(1, static_cast<long>(deg));
        }
    return M;
}

EigenvalueBounds leading_eigenvalue_bounds(const std::vector<std::vector<Rat>>& entries,
                                           const Rat& tol) {
    if (tol <= 0) throw error("tolerance must be positive");
    EigenvalueBounds out;
    size_t n = entries.size();
    if (n == 0) {
        // nothing carries weight; treat the empty system as unobstructed
        out.decision = LambdaDecision::LessThanOne;
        return out;
    }
    auto sccs = detail::strongly_connected_components(support_of(entries));
    std::vector<BlockBounds> bb;
    bb.reserve(sccs.size());
    bool all_below = true;
    int decided_block = -1, widest_block = 0;
    for (size_t t = 0; t < sccs.size(); ++t) {
        const auto& blk = sccs[t];
        size_t m = blk.size();
        std::vector<std::vector<Rat>> sub(m, std::vector<Rat>(m, Rat(0)));
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j)
                sub[i][j] = entries[static_cast<size_t>(blk[i])][static_cast<size_t>(blk[j])];
        bb.push_back(certify_block(sub, tol));
        const BlockBounds& r = bb.back();
        if (t == 0 || r.lower > out.lower) out.lower = r.lower;
        if (t == 0 || r.upper > out.upper) {
            out.upper = r.upper;
            widest_block = static_cast<int>(t);
        }
        if (r.decision == LambdaDecision::AtLeastOne && decided_block < 0)
            decided_block = static_cast<int>(t);
        if (r.decision != LambdaDecision::LessThanOne) all_below = false;
    }
    if (decided_block >= 0) {
        out.decision = LambdaDecision::AtLeastOne;
        out.witness = bb[static_cast<size_t>(decided_block)].witness;
        out.witness_members = sccs[static_cast<size_t>(decided_block)];
    } else if (all_below) {
        out.decision = LambdaDecision::LessThanOne;
        out.witness = bb[static_cast<size_t>(widest_block)].witness;
        out.witness_members = sccs[static_cast<size_t>(widest_block)];
    }
    return out;
}

EigenvalueBounds leading_eigenvalue_bounds(const TransitionMatrix& M, const Rat& tol) {
    return leading_eigenvalue_bounds(M.entries, tol);
}

bool is_irreducible(const std::vector<std::vector<bool>>& support) {
    size_t n = support.size();
    if (n == 0) return false;
    if (n == 1) return support[0][0]; // the 1x1 zero matrix has no positive power
    return detail::strongly_connected_components(support).size() == 1;
}

bool is_irreducible(const TransitionMatrix& M) {
    return is_irreducible(support_of(M.entries));
}

LevyReport find_levy_cycles(const CoverPresentation& P, const Multicurve& G) {
    if (auto w = unstable_witness(P, G))
        throw error("multicurve is not stable: essential lift class `" + w->word.str() +
                    "` is not a member");
    LevyReport rep;
    int n = G.size();
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    std::map<std::pair<int, int>, Word> first_witness;
    for (int i = 0; i < n; ++i)
        for (const LiftComponent& comp : lift_curve(P, G.members[static_cast<size_t>(i)])) {
            if (comp.degree != 1 || comp.kind != LiftKind::Essential) continue;
            int j = G.index_of(*comp.cls);
            if (j < 0) continue;
            rep.edges.push_back({i, j, comp.word});
            if (first_witness.emplace(std::make_pair(i, j), comp.word).second)
                adj[static_cast<size_t>(i)].push_back(j);
        }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    for (const auto& cyc : elementary_cycles(adj, 4096)) {
        LevyCycle L;
        L.members = cyc;
        size_t len = cyc.size();
        for (size_t t = 0; t < len; ++t)
            L.witnesses.push_back(first_witness.at({cyc[t], cyc[(t + 1) % len]}));
        rep.cycles.push_back(std::move(L));
    }
    return rep;
}

namespace {

// Candidate marked contents of one preimage component: the component is
// bounded by that single lift curve, so its interior marked set is one of
// the curve's two sides.
std::vector<std::vector<int>> side_candidates(const CoverPresentation& P,
                                              const LiftComponent& comp) {
    int n = P.n();
    switch (comp.kind) {
    case LiftKind::Trivial: {
        std::vector<int> all(static_cast<size_t>(n));
        std::iota(all.begin(), all.end(), 1);
        return {std::vector<int>{}, all};
    }
    case LiftKind::Peripheral: {
        std::vector<int> rest;
        for (int j = 1; j <= n; ++j)
            if (j != comp.peripheral_at) rest.push_back(j);
        return {{comp.peripheral_at}, rest};
    }
    case LiftKind::Essential:
        return {comp.cls->sides.inside, comp.cls->sides.outside()};
    }
    return {};
}

unsigned long long mask_of(const std::vector<int>& pts) {
    unsigned long long m = 0;
    for (int p : pts) m |= 1ULL << p;
    return m;
}

struct ContentChoice {
    std::vector<std::vector<int>> sets; // aligned with the lift list
};

// Every way of attributing the marked preimages of a disk to its preimage
// components such that each takes a full side of its own boundary and the
// sets partition the target exactly. The true topological configuration
// is always among the solutions, so a property demanded of every solution
// is sound. Returns false when cut off at `cap` (ambiguity too wide).
bool resolve_contents(const CoverPresentation& P, const std::vector<LiftComponent>& lifts,
                      const std::vector<int>& target, std::vector<ContentChoice>& out,
                      size_t cap) {
    size_t m = lifts.size();
    unsigned long long want = mask_of(target);
    std::vector<std::vector<std::vector<int>>> cands(m);
    std::vector<std::vector<unsigned long long>> cmasks(m);
    for (size_t q = 0; q < m; ++q) {
        for (auto& side : side_candidates(P, lifts[q])) {
            unsigned long long sm = mask_of(side);
            if ((sm & ~want) == 0) {
                cands[q].push_back(side);
                cmasks[q].push_back(sm);
            }
        }
        if (cands[q].empty()) return true; // no solution exists
    }
    std::vector<size_t> pick(m, 0);
    bool truncated = false;
    std::function<void(size_t, unsigned long long)> rec = [&](size_t at,
                                                              unsigned long long used) {
        if (truncated) return;
        if (at == m) {
            if (used == want) {
                ContentChoice ch;
                for (size_t q = 0; q < m; ++q) ch.sets.push_back(cands[q][pick[q]]);
                out.push_back(std::move(ch));
                if (out.size() > cap) truncated = true;
            }
            return;
        }
        for (size_t t = 0; t < cmasks[at].size(); ++t) {
            if ((cmasks[at][t] & used) != 0) continue;
            pick[at] = t;
            rec(at + 1, used | cmasks[at][t]);
            if (truncated) return;
        }
    };
    rec(0, 0);
    if (truncated) {
        out.clear();
        return false;
    }
    return true;
}

struct DepthMemo {
    std::map<std::string, int> verified_to;
    std::map<std::string, int> fails_at; // least depth at which verification fails
    std::vector<std::string>* notes = nullptr;
};

std::string state_key(const CurveClass& c, const std::vector<int>& content) {
    std::string k = c.word.str();
    k += '|';
    for (int z : content) {
        k += std::to_string(z);
        k += ',';
    }
    return k;
}

// Depth-bounded check that every preimage level of the disk (c, content)
// consists of disks only. Disks carrying at most one marked point stay
// disks at every level: their components cover a disk branched over at
// most one interior point, which is an annulus cover plus a filled fiber.
bool verify_disks(const CoverPresentation& P, const CurveClass& c,
                  const std::vector<int>& content, int depth, DepthMemo& memo) {
    if (depth <= 0) return true;
    if (content.size() <= 1) return true;
    std::string key = state_key(c, content);
    auto f = memo.fails_at.find(key);
    if (f != memo.fails_at.end() && f->second <= depth) return false;
    auto ok = memo.verified_to.find(key);
    if (ok != memo.verified_to.end() && ok->second >= depth) return true;

    PreimageTopology top = disk_preimage_topology(P, c, content);
    bool pass = top.all_disks;
    int fail_level = pass ? depth : 1;
    if (pass) {
        std::vector<ContentChoice> sols;
        bool complete =
            resolve_contents(P, top.boundary_lifts, preimage_marked(P, content), sols, 64);
        if (sols.empty())
            throw error("no consistent side assignment for the disk preimage components");
        if (!complete) {
            if (memo.notes)
                memo.notes->push_back("side assignment over `" + c.word.str() +
                                      "` is ambiguous; removability not certified");
            pass = false;
            fail_level = 1;
        }
        for (size_t s = 0; pass && s < sols.size(); ++s) {
            for (size_t q = 0; pass && q < top.boundary_lifts.size(); ++q) {
                const std::vector<int>& down_content = sols[s].sets[q];
                if (down_content.size() <= 1) continue;
                const LiftComponent& comp = top.boundary_lifts[q];
                if (comp.kind == LiftKind::Trivial) {
                    // a trivial boundary around everything has no class to recurse on
                    if (memo.notes)
                        memo.notes->push_back("trivial lift over `" + c.word.str() +
                                              "` carries marked points; removability not certified");
                    pass = false;
                    fail_level = 1;
                    break;
                }
                CurveClass down = comp.kind == LiftKind::Essential
                                      ? *comp.cls
                                      : canonical_curve_class(
                                            peripheral_word(comp.peripheral_at, P.n()), P.marked);
                if (!verify_disks(P, down, down_content, depth - 1, memo)) pass = false;
            }
        }
    }
    if (pass) {
        int& slot = memo.verified_to[key];
        if (slot < depth) slot = depth;
    } else {
        auto it = memo.fails_at.find(key);
        if (it == memo.fails_at.end() || it->second > fail_level)
            memo.fails_at[key] = fail_level;
    }
    return pass;
}

} // namespace

LevyClassification classify_levy(const CoverPresentation& P, const Multicurve& G,
                                 const LevyCycle& cycle, int depth) {
    if (depth <= 0) throw error("classification depth must be positive");
    LevyClassification out;
    size_t len = cycle.members.size();
    std::vector<CurveClass> cls;
    cls.reserve(len);
    for (int idx : cycle.members) cls.push_back(G.members[static_cast<size_t>(idx)]);
    Multicurve sub = Multicurve::create(cls, G.marked);
    FaceTree T = face_structure(sub, G.marked);
    out.pattern = true;
    for (int mi = 0; mi < sub.size(); ++mi)
        if (!T.is_disk(T.inner_face(mi))) {
            out.pattern = false;
            break;
        }
    if (!out.pattern) {
        out.label = "not-degenerate";
        return out;
    }

    // Disk contents indexed by cycle position. The curves bound pairwise
    // disjoint disks, which for two or more of them must be the inner
    // faces; a single curve may take either side.
    std::vector<std::vector<std::vector<int>>> trials;
    {
        std::vector<std::vector<int>> inner(len);
        for (size_t t = 0; t < len; ++t) {
            int mi = sub.index_of(cls[t]);
            inner[t] = T.faces[static_cast<size_t>(T.inner_face(mi))].marked;
        }
        trials.push_back(std::move(inner));
        if (len == 1) trials.push_back({T.faces[0].marked});
    }

    auto edges_match = [&](const std::vector<std::vector<int>>& contents) -> bool {
        for (size_t t = 0; t < len; ++t) {
            const std::vector<int>& S = contents[t];
            const std::vector<int>& Snext = contents[(t + 1) % len];
            PreimageTopology top = disk_preimage_topology(P, cls[t], S);
            if (!top.all_disks) {
                out.notes.push_back("preimage of the disk at `" + cls[t].word.str() +
                                    "` has a non-disk component; degeneracy not determined");
                return false;
            }
            int w = -1;
            for (size_t q = 0; q < top.boundary_lifts.size(); ++q)
                if (top.boundary_lifts[q].word == cycle.witnesses[t]) {
                    w = static_cast<int>(q);
                    break;
                }
            if (w < 0) return false;
            std::vector<ContentChoice> sols;
            bool complete =
                resolve_contents(P, top.boundary_lifts, preimage_marked(P, S), sols, 64);
            if (sols.empty())
                throw error("no consistent side assignment for the disk preimage components");
            if (!complete) {
                out.notes.push_back("side assignment over `" + cls[t].word.str() +
                                    "` is ambiguous; degeneracy not certified");
                return false;
            }
            for (const ContentChoice& sol : sols)
                if (sol.sets[static_cast<size_t>(w)] != Snext) return false;
        }
        return true;
    };

    DepthMemo memo;
    memo.notes = &out.notes;
    for (const auto& trial : trials)
        if (edges_match(trial)) {
            out.degenerate = true;
            break;
        }
    for (const auto& trial : trials) {
        bool all = true;
        for (size_t t = 0; t < len && all; ++t)
            all = verify_disks(P, cls[t], trial[t], depth, memo);
        if (all) {
            out.verified_depth = depth;
            break;
        }
    }
    out.label = out.verified_depth > 0
                    ? "removable-up-to-depth(" + std::to_string(depth) + ")"
                    : (out.degenerate ? "degenerate" : "plain");
    return out;
}

CaseReport classify_obstruction_case(const CoverPresentation& P, const Multicurve& G) {
    if (unstable_witness(P, G)) throw error("precondition failed: multicurve is not stable");
    if (P.degree != 3) throw error("precondition failed: degree is not 3");
    auto fc = fixed_critical_points(P);
    if (fc.size() != 2)
        throw error("precondition failed: the map does not have exactly two fixed critical points");
    TransitionMatrix M = transition_matrix(P, G);
    if (!is_irreducible(M)) throw error("precondition failed: transition matrix is reducible");
    EigenvalueBounds eb = leading_eigenvalue_bounds(M);
    if (eb.decision != LambdaDecision::AtLeastOne)
        throw error("precondition failed: leading eigenvalue decision is `" +
                    decision_text(eb.decision) + "`");

    std::vector<int> fixed = {fc[0].first, fc[1].first};
    std::sort(fixed.begin(), fixed.end());
    std::vector<int> cv = critical_values(P);
    std::vector<int> free_cv = free_critical_values(P);
    FaceTree T = face_structure(G, P.marked);
    CaseReport rep;
    std::vector<std::pair<int, ObstructionCase>> found;
    for (size_t f = 0; f < T.faces.size(); ++f) {
        if (!T.is_disk(static_cast<int>(f))) continue;
        const Face& face = T.faces[f];
        const CurveClass& c = G.members[static_cast<size_t>(face.boundary[0])];
        PreimageTopology top = disk_preimage_topology(P, c, face.marked);
        if (top.all_disks) continue;
        bool newton = !sorted_intersection(face.marked, fixed).empty();
        std::vector<int> cv_in = sorted_intersection(face.marked, cv);
        if (newton) {
            found.emplace_back(static_cast<int>(f), ObstructionCase::NewtonLike);
        } else if (cv_in == free_cv && free_cv.size() == 2) {
            found.emplace_back(static_cast<int>(f), ObstructionCase::QuadraticLike);
        } else {
            rep.ambiguous = true;
            rep.notes.push_back("disk face " + std::to_string(f) +
                                " has a non-disk preimage but matches neither description");
        }
    }
    if (!found.empty()) {
        rep.kind = found[0].second;
        rep.face = found[0].first;
        if (found.size() > 1 || rep.ambiguous) {
            rep.ambiguous = true;
            for (const auto& [f, k] : found)
                rep.notes.push_back("disk face " + std::to_string(f) + ": " + case_text(k));
        }
    }
    return rep;
}

bool StructuralReport::pass() const {
    for (const ValidationItem& it : items)
        if (!it.pass) return false;
    return true;
}

StructuralReport structural_checks(const CoverPresentation& P, const Multicurve& G) {
    CaseReport cr = classify_obstruction_case(P, G);
    if (cr.kind != ObstructionCase::QuadraticLike)
        throw error("precondition failed: classification is not quadratic-like");
    auto fc = fixed_critical_points(P);
    std::vector<int> fixed = {fc[0].first, fc[1].first};
    std::sort(fixed.begin(), fixed.end());
    StructuralReport rep;
    {
        ValidationItem it{"fixed critical points stay together", true, ""};
        for (const CurveClass& c : G.members) {
            size_t cnt = sorted_intersection(c.sides.inside, fixed).size();
            if (cnt == 1) {
                it.pass = false;
                it.detail = "member `" + c.word.str() + "` separates them";
                break;
            }
        }
        rep.items.push_back(it);
    }
    {
        ValidationItem it{"three degree-one lifts per member", true, ""};
        for (const CurveClass& c : G.members) {
            auto comps = lift_curve(P, c);
            bool good = comps.size() == 3;
            for (const LiftComponent& comp : comps)
                if (comp.degree != 1) good = false;
            if (!good) {
                it.pass = false;
                it.detail = "member `" + c.word.str() + "` has " +
                            std::to_string(comps.size()) + " lift components";
                break;
            }
        }
        rep.items.push_back(it);
    }
    {
        ValidationItem it{"lift classes fit the face decomposition", true, ""};
        FaceTree T = face_structure(G, P.marked);
        for (const CurveClass& c : G.members) {
            for (const LiftComponent& comp : lift_curve(P, c)) {
                if (comp.kind != LiftKind::Essential) continue;
                if (!partition_contained(T, *comp.cls)) {
                    it.pass = false;
                    it.detail = "lift `" + comp.cls->word.str() + "` of `" + c.word.str() +
                                "` fits no face";
                    break;
                }
            }
            if (!it.pass) break;
        }
        rep.items.push_back(it);
    }
    return rep;
}

TheoremVerdict verify_main_theorem(const CoverPresentation& P, const Multicurve& G) {
    if (!validate_presentation(P).pass())
        throw error("precondition failed: presentation is invalid");
    if (P.degree != 3) throw error("precondition failed: degree is not 3");
    if (fixed_critical_points(P).size() != 2)
        throw error("precondition failed: the map does not have exactly two fixed critical points");
    if (G.empty()) throw error("precondition failed: multicurve is empty");
    if (unstable_witness(P, G)) throw error("precondition failed: multicurve is not stable");
    TransitionMatrix M = transition_matrix(P, G);
    if (!is_irreducible(M)) throw error("precondition failed: transition matrix is reducible");
    EigenvalueBounds eb = leading_eigenvalue_bounds(M);
    if (eb.decision != LambdaDecision::AtLeastOne)
        throw error("precondition failed: leading eigenvalue decision is `" +
                    decision_text(eb.decision) + "`");
    LevyReport levy = find_levy_cycles(P, G);
    TheoremVerdict v;
    if (!levy.cycles.empty()) {
        v.verdict = "confirmed";
        v.witness = *std::min_element(levy.cycles.begin(), levy.cycles.end(),
                                      [](const LevyCycle& a, const LevyCycle& b) {
                                          if (a.members.size() != b.members.size())
                                              return a.members.size() < b.members.size();
                                          return a.members < b.members;
                                      });
        return v;
    }
    v.verdict = "COUNTEREXAMPLE-FLAG";
    v.diagnostics.push_back("certified irreducible obstruction without a Levy cycle");
    v.diagnostics.push_back("lambda in [" + rat_to_string(eb.lower) + ", " +
                            rat_to_string(eb.upper) + "]");
    for (int i = 0; i < M.size(); ++i) {
        std::string row = "row `" + M.labels[static_cast<size_t>(i)].word.str() + "`:";
        for (int j = 0; j < M.size(); ++j)
            row += " " + rat_to_string(M.entries[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        v.diagnostics.push_back(row);
    }
    for (const CurveClass& c : G.members) {
        std::string lifts = "member `" + c.word.str() + "` lift degrees:";
        for (const LiftComponent& comp : lift_curve(P, c))
            lifts += " " + std::to_string(comp.degree);
        v.diagnostics.push_back(lifts);
    }
    return v;
}

bool BlockCertificate::hamiltonian_levy() const {
    for (const LevyCycle& c : levy_cycles) {
        if (c.members.size() != members.size()) continue;
        std::vector<int> s = c.members;
        std::sort(s.begin(), s.end());
        if (s == members) return true;
    }
    return false;
}

TheoremSweep sweep_main_theorem(const CoverPresentation& P, const Multicurve& G) {
    TheoremSweep sw;
    TransitionMatrix M = transition_matrix(P, G);
    if (M.size() == 0) return sw;
    LevyReport levy = find_levy_cycles(P, G);
    std::map<std::pair<int, int>, Word> wit;
    for (const LevyEdge& e : levy.edges) wit.emplace(std::make_pair(e.from, e.to), e.witness);
    for (const auto& blk : detail::strongly_connected_components(support_of(M.entries))) {
        BlockCertificate cert;
        cert.members = blk;
        size_t m = blk.size();
        std::vector<std::vector<Rat>> sub(m, std::vector<Rat>(m, Rat(0)));
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j)
                sub[i][j] = M.entries[static_cast<size_t>(blk[i])][static_cast<size_t>(blk[j])];
        cert.bounds = leading_eigenvalue_bounds(sub, Rat(1, 1000000000L));
        std::vector<int> remapped;
        for (int loc : cert.bounds.witness_members) remapped.push_back(blk[static_cast<size_t>(loc)]);
        cert.bounds.witness_members = std::move(remapped);
        if (cert.obstructed()) {
            std::map<int, int> local;
            for (size_t t = 0; t < m; ++t) local[blk[t]] = static_cast<int>(t);
            std::vector<std::vector<int>> adj(m);
            for (const LevyEdge& e : levy.edges) {
                auto a = local.find(e.from);
                auto b = local.find(e.to);
                if (a != local.end() && b != local.end())
                    adj[static_cast<size_t>(a->second)].push_back(b->second);
            }
            for (auto& row : adj) {
                std::sort(row.begin(), row.end());
                row.erase(std::unique(row.begin(), row.end()), row.end());
            }
            for (const auto& cyc : elementary_cycles(adj, 4096)) {
                LevyCycle L;
                for (int t : cyc) L.members.push_back(blk[static_cast<size_t>(t)]);
                size_t len = cyc.size();
                for (size_t t = 0; t < len; ++t)
                    L.witnesses.push_back(wit.at({L.members[t], L.members[(t + 1) % len]}));
                cert.levy_cycles.push_back(std::move(L));
            }
            if (cert.levy_cycles.empty()) {
                sw.confirmed = false;
                std::string d = "certified block {";
                for (size_t t = 0; t < m; ++t) {
                    if (t) d += ", ";
                    d += "`" + G.members[static_cast<size_t>(blk[t])].word.str() + "`";
                }
                d += "} carries no Levy cycle";
                sw.diagnostics.push_back(std::move(d));
            }
        }
        sw.blocks.push_back(std::move(cert));
    }
    return sw;
}

Analysis analyze_multicurve(const CoverPresentation& P, const Multicurve& G, int depth,
                            const Rat& tol) {
    Analysis a;
    a.matrix = transition_matrix(P, G);
    if (detail::transition_matrix_raw(P, G) != a.matrix.entries)
        throw error("transition matrix cross-check failed");
    a.bounds = leading_eigenvalue_bounds(a.matrix, tol);
    a.irreducible = is_irreducible(a.matrix);
    a.levy = find_levy_cycles(P, G);
    for (LevyCycle& cyc : a.levy.cycles)
        cyc.classification = classify_levy(P, G, cyc, depth).label;
    a.sweep = sweep_main_theorem(P, G);
    try {
        a.case_report = classify_obstruction_case(P, G);
        if (a.case_report->kind == ObstructionCase::QuadraticLike)
            a.structure = structural_checks(P, G);
    } catch (const error& e) {
        a.case_error = e.what();
    }
    try {
        a.theorem = verify_main_theorem(P, G);
    } catch (const error& e) {
        a.theorem_error = e.what();
    }
    return a;
}

namespace detail {

std::vector<std::vector<Rat>> transition_matrix_raw(const CoverPresentation& P,
                                                    const Multicurve& G) {
    int n = G.size();
    std::vector<std::vector<Rat>> e(static_cast<size_t>(n),
                                    std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
    for (int j = 0; j < n; ++j)
        for (const LiftComponent& comp : lift_curve(P, G.members[static_cast<size_t>(j)])) {
            Word w = cyclic_reduce(comp.word);
            if (w.letters.empty()) continue;
            if (peripheral_class_of(w, P.marked)) continue;
            CurveClass cls = canonical_curve_class(comp.word, P.marked);
            int i = -1;
            for (int t = 0; t < n; ++t)
                if (G.members[static_cast<size_t>(t)].word == cls.word) {
                    i = t;
                    break;
                }
            if (i < 0)
                throw error("multicurve is not stable: essential lift class `" + cls.word.str() +
                            "` is not a member");
            e[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                Rat(1, static_cast<long>(comp.degree));
        }
    return e;
}

std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<bool>>& support) {
    int n = static_cast<int>(support.size());
    std::vector<int> idx(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0);
    std::vector<char> onstk(static_cast<size_t>(n), 0);
    std::vector<int> stk;
    std::vector<std::vector<int>> comps;
    int counter = 0;
    std::function<void(int)> connect = [&](int v) {
        size_t vs = static_cast<size_t>(v);
        idx[vs] = low[vs] = counter++;
        stk.push_back(v);
        onstk[vs] = 1;
        for (int w = 0; w < n; ++w) {
            if (!support[vs][static_cast<size_t>(w)]) continue;
            size_t ws = static_cast<size_t>(w);
            if (idx[ws] < 0) {
                connect(w);
                low[vs] = std::min(low[vs], low[ws]);
            } else if (onstk[ws]) {
                low[vs] = std::min(low[vs], idx[ws]);
            }
        }
        if (low[vs] == idx[vs]) {
            std::vector<int> comp;
            for (;;) {
                int w = stk.back();
                stk.pop_back();
                onstk[static_cast<size_t>(w)] = 0;
                comp.push_back(w);
                if (w == v) break;
            }
            std::sort(comp.begin(), comp.end());
            comps.push_back(std::move(comp));
        }
    };
    for (int v = 0; v < n; ++v)
        if (idx[static_cast<size_t>(v)] < 0) connect(v);
    std::sort(comps.begin(), comps.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
    return comps;
}

bool irreducible_by_powers(const std::vector<std::vector<bool>>& support) {
    size_t n = support.size();
    if (n == 0) return false;
    auto cur = support;
    auto acc = support;
    for (size_t k = 2; k <= n; ++k) {
        std::vector<std::vector<bool>> nxt(n, std::vector<bool>(n, false));
        for (size_t i = 0; i < n; ++i)
            for (size_t t = 0; t < n; ++t)
                if (cur[i][t])
                    for (size_t j = 0; j < n; ++j)
                        if (support[t][j]) nxt[i][j] = true;
        cur = std::move(nxt);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (cur[i][j]) acc[i][j] = true;
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (!acc[i][j]) return false;
    return true;
}

namespace {

using Poly = std::vector<Rat>; // ascending coefficients

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Rat peval(const Poly& p, const Rat& x) {
    Rat v(0);
    for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

Poly pderiv(const Poly& p) {
    Poly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    return d;
}

Poly prem(Poly num, const Poly& den) {
    while (num.size() >= den.size() && !num.empty()) {
        Rat f = num.back() / den.back();
        size_t off = num.size() - den.size();
        for (size_t i = 0; i < den.size(); ++i) num[off + i] -= f * den[i];
        num.pop_back();
        trim(num);
    }
    return num;
}

Poly pdiv_exact(Poly num, const Poly& den) {
    Poly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rat(0));
    while (num.size() >= den.size() && !num.empty()) {
        Rat f = num.back() / den.back();
        q[num.size() - den.size()] = f;
        size_t off = num.size() - den.size();
        for (size_t i = 0; i < den.size(); ++i) num[off + i] -= f * den[i];
        num.pop_back();
        trim(num);
    }
    return q;
}

Poly pgcd(Poly x, Poly y) {
    trim(x);
    trim(y);
    while (!y.empty()) {
        Poly r = prem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    if (!x.empty()) {
        Rat lead = x.back();
        for (Rat& c : x) c /= lead;
    }
    return x;
}

} // namespace

std::vector<Rat> char_poly(const std::vector<std::vector<Rat>>& a) {
    size_t n = a.size();
    std::vector<Rat> c(n + 1, Rat(0));
    c[n] = 1;
    if (n == 0) return c;
    std::vector<std::vector<Rat>> N = a;
    for (size_t k = 1; k <= n; ++k) {
        Rat tr(0);
        for (size_t i = 0; i < n; ++i) tr += N[i][i];
        Rat ck = -tr / static_cast<long>(k);
        c[n - k] = ck;
        if (k < n) {
            std::vector<std::vector<Rat>> Nc = N;
            for (size_t i = 0; i < n; ++i) Nc[i][i] += ck;
            std::vector<std::vector<Rat>> nxt(n, std::vector<Rat>(n, Rat(0)));
            for (size_t i = 0; i < n; ++i)
                for (size_t t = 0; t < n; ++t)
                    if (a[i][t] != 0)
                        for (size_t j = 0; j < n; ++j) nxt[i][j] += a[i][t] * Nc[t][j];
            N = std::move(nxt);
        }
    }
    return c;
}

bool spectral_radius_at_least_one(const std::vector<std::vector<Rat>>& entries) {
    size_t n = entries.size();
    if (n == 0) return false;
    Poly p = char_poly(entries);
    if (peval(p, Rat(1)) == 0) return true;
    Poly g = pgcd(p, pderiv(p));
    Poly q = g.size() <= 1 ? p : pdiv_exact(p, g);
    trim(q);
    std::vector<Poly> chain;
    chain.push_back(q);
    Poly d = pderiv(q);
    trim(d);
    if (!d.empty()) chain.push_back(std::move(d));
    while (chain.size() >= 2 && chain.back().size() > 1) {
        Poly r = prem(chain[chain.size() - 2], chain.back());
        trim(r);
        if (r.empty()) break;
        for (Rat& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    auto variations = [&](const Rat& x) {
        int changes = 0, prev = 0;
        for (const Poly& s : chain) {
            Rat val = peval(s, x);
            int sg = val > 0 ? 1 : (val < 0 ? -1 : 0);
            if (sg == 0) continue;
            if (prev != 0 && sg != prev) ++changes;
            prev = sg;
        }
        return changes;
    };
    // roots of the monic p lie within 1 + max |c_i|, so H clears them all
    Rat H(2);
    for (size_t i = 0; i + 1 < p.size(); ++i) {
        Rat m = abs(p[i]) + 2;
        if (m > H) H = m;
    }
    return variations(Rat(1)) - variations(H) > 0;
}

} // namespace detail

} // namespace thurston
