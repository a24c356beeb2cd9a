#include "thurston/words.hpp"

#include <algorithm>
#include <sstream>

namespace thurston {

int MarkedSet::index_of(const std::string& label) const {
    for (int i = 0; i < n(); ++i)
        if (labels[static_cast<size_t>(i)] == label)
            return i + 1;
    return 0;
}

Word Word::inverse() const {
    Word out;
    out.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        out.letters.push_back(-*it);
    return out;
}

Word Word::operator*(const Word& rhs) const {
    Word out;
    out.letters.reserve(letters.size() + rhs.letters.size());
    out.letters.insert(out.letters.end(), letters.begin(), letters.end());
    out.letters.insert(out.letters.end(), rhs.letters.begin(), rhs.letters.end());
    return out;
}

Word Word::parse(const std::string& text) {
    Word out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok.size() < 2 || (tok[0] != 'g' && tok[0] != 'G'))
            throw error("bad word token: " + tok);
        int idx = 0;
        for (size_t i = 1; i < tok.size(); ++i) {
            if (tok[i] < '0' || tok[i] > '9')
                throw error("bad word token: " + tok);
            idx = idx * 10 + (tok[i] - '0');
            if (idx > 1000000)
                throw error("bad word token: " + tok);
        }
        if (idx == 0)
            throw error("bad word token: " + tok);
        out.letters.push_back(tok[0] == 'g' ? idx : -idx);
    }
    return out;
}

std::string Word::str() const {
    std::string out;
    for (int l : letters) {
        if (!out.empty())
            out += ' ';
        out += (l > 0 ? 'g' : 'G');
        out += std::to_string(l > 0 ? l : -l);
    }
    return out;
}

int letter_key(int letter) {
    return letter > 0 ? 2 * letter : -2 * letter + 1;
}

bool word_less(const Word& a, const Word& b) {
    size_t m = std::min(a.letters.size(), b.letters.size());
    for (size_t i = 0; i < m; ++i) {
        int ka = letter_key(a.letters[i]), kb = letter_key(b.letters[i]);
        if (ka != kb)
            return ka < kb;
    }
    return a.letters.size() < b.letters.size();
}

Word free_reduce(const Word& w) {
    Word out;
    for (int l : w.letters) {
        if (!out.letters.empty() && out.letters.back() == -l)
            out.letters.pop_back();
        else
            out.letters.push_back(l);
    }
    return out;
}

Word cyclic_reduce(const Word& w) {
    Word r = free_reduce(w);
    size_t lo = 0, hi = r.letters.size();
    while (hi - lo >= 2 && r.letters[lo] == -r.letters[hi - 1]) {
        ++lo;
        --hi;
    }
    return Word(std::vector<int>(r.letters.begin() + static_cast<long>(lo),
                                 r.letters.begin() + static_cast<long>(hi)));
}

namespace {

bool rotation_equal(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size())
        return false;
    size_t len = a.size();
    if (len == 0)
        return true;
    for (size_t s = 0; s < len; ++s) {
        bool ok = true;
        for (size_t i = 0; i < len; ++i) {
            if (a[(s + i) % len] != b[i]) {
                ok = false;
                break;
            }
        }
        if (ok)
            return true;
    }
    return false;
}

std::vector<int> least_rotation(const std::vector<int>& a) {
    size_t len = a.size();
    if (len == 0)
        return a;
    size_t best = 0;
    for (size_t s = 1; s < len; ++s) {
        for (size_t i = 0; i < len; ++i) {
            int ks = letter_key(a[(s + i) % len]);
            int kb = letter_key(a[(best + i) % len]);
            if (ks != kb) {
                if (ks < kb)
                    best = s;
                break;
            }
        }
    }
    std::vector<int> out(len);
    for (size_t i = 0; i < len; ++i)
        out[i] = a[(best + i) % len];
    return out;
}

} // namespace

bool free_conjugate(const Word& u, const Word& v) {
    return rotation_equal(cyclic_reduce(u).letters, cyclic_reduce(v).letters);
}

std::vector<long long> winding_vector(const Word& w, const MarkedSet& m) {
    int n = m.n();
    std::vector<long long> out(static_cast<size_t>(n > 0 ? n - 1 : 0), 0);
    for (int l : w.letters) {
        int idx = l > 0 ? l : -l;
        if (idx >= n)
            throw error("generator index out of range: g" + std::to_string(idx));
        out[static_cast<size_t>(idx - 1)] += (l > 0 ? 1 : -1);
    }
    return out;
}

std::vector<int> SidePartition::outside() const {
    std::vector<int> out;
    size_t k = 0;
    for (int i = 1; i <= n; ++i) {
        if (k < inside.size() && inside[k] == i)
            ++k;
        else
            out.push_back(i);
    }
    return out;
}

SidePartition side_partition(const Word& w, const MarkedSet& m) {
    Word r = cyclic_reduce(w);
    if (r.empty())
        throw error("null-homotopic");
    std::vector<long long> wind = winding_vector(r, m);
    bool pos = false, neg = false;
    for (long long e : wind) {
        if (e > 1 || e < -1)
            throw error("fails simple-curve homology test");
        pos = pos || e == 1;
        neg = neg || e == -1;
    }
    if (pos && neg)
        throw error("fails simple-curve homology test");
    if (!pos && !neg)
        throw error("fails simple-curve homology test");
    SidePartition sp;
    sp.n = m.n();
    for (size_t i = 0; i < wind.size(); ++i)
        if (wind[i] != 0)
            sp.inside.push_back(static_cast<int>(i) + 1);
    return sp;
}

CurveClass canonical_curve_class(const Word& w, const MarkedSet& m) {
    Word r = cyclic_reduce(w);
    if (r.empty())
        throw error("null-homotopic");
    CurveClass c;
    c.sides = side_partition(r, m);
    std::vector<int> a = least_rotation(r.letters);
    std::vector<int> b = least_rotation(r.inverse().letters);
    Word wa{a}, wb{b};
    c.word = word_less(wa, wb) ? wa : wb;
    return c;
}

std::optional<int> peripheral_class_of(const Word& w, const MarkedSet& m) {
    int n = m.n();
    Word r = cyclic_reduce(w);
    if (r.empty())
        return std::nullopt;
    if (r.size() == 1) {
        int idx = r.letters[0] > 0 ? r.letters[0] : -r.letters[0];
        if (idx < n)
            return idx;
        return std::nullopt;
    }
    Word d = derived_last_word(n);
    if (rotation_equal(r.letters, d.letters) ||
        rotation_equal(r.letters, d.inverse().letters))
        return n;
    return std::nullopt;
}

Word derived_last_word(int n) {
    Word out;
    for (int i = n - 1; i >= 1; --i)
        out.letters.push_back(-i);
    return out;
}

Word peripheral_word(int j, int n) {
    if (j < 1 || j > n)
        throw error("marked index out of range");
    if (j < n)
        return Word({j});
    return derived_last_word(n);
}

} // namespace thurston
