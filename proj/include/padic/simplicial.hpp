#pragma once

// Finite simplicial sets presented by nondegenerate simplices whose faces may
// be degenerate, and their normalized cochain complexes.

#include "padic/complex.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <set>
#include <string>
#include <vector>

namespace padic {

struct SimplexRef {
    int dim = 0;
    std::size_t index = 0;
    friend bool operator==(const SimplexRef&, const SimplexRef&) = default;
    friend auto operator<=>(const SimplexRef&, const SimplexRef&) = default;
};

/// s_{i_1} s_{i_2} ... s_{i_k}(base) with i_1 > i_2 > ... > i_k.
struct DegenerateImage {
    std::vector<int> degeneracies;
    SimplexRef base;

    int dim() const { return base.dim + static_cast<int>(degeneracies.size()); }
    bool is_degenerate() const { return !degeneracies.empty(); }
    friend bool operator==(const DegenerateImage&, const DegenerateImage&) = default;
    friend auto operator<=>(const DegenerateImage&, const DegenerateImage&) = default;
};

/// Rewrites a degeneracy word into strictly decreasing form using
/// s_i s_j = s_{j+1} s_i for i <= j.
inline std::vector<int> normalize_degeneracies(std::vector<int> w) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k + 1 < w.size(); ++k)
            if (w[k] <= w[k + 1]) {
                int a = w[k], b = w[k + 1];
                w[k] = b + 1;
                w[k + 1] = a;
                changed = true;
            }
    }
    return w;
}

class SimplicialSet {
public:
    SimplicialSet() = default;

    int dim() const { return static_cast<int>(names_.size()) - 1; }
    std::size_t count(int n) const { return n < 0 || n > dim() ? 0 : names_[static_cast<std::size_t>(n)].size(); }
    const std::string& name(SimplexRef s) const { return names_.at(static_cast<std::size_t>(s.dim)).at(s.index); }
    const std::vector<std::string>& names(int n) const { return names_.at(static_cast<std::size_t>(n)); }
    std::vector<std::size_t> counts() const {
        std::vector<std::size_t> c;
        for (const auto& v : names_) c.push_back(v.size());
        return c;
    }
    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }

    std::optional<SimplexRef> find(const std::string& nm) const {
        auto it = by_name_.find(nm);
        if (it == by_name_.end()) return std::nullopt;
        return it->second;
    }

    /// Adds a nondegenerate simplex; faces are checked later by validate().
    SimplexRef add(int n, const std::string& nm, std::vector<DegenerateImage> faces) {
        if (n < 0) throw std::invalid_argument("negative simplex dimension");
        if (by_name_.count(nm)) throw std::invalid_argument("duplicate simplex name '" + nm + "'");
        if (n == 0 && !faces.empty()) throw std::invalid_argument("vertices have no faces");
        if (n > 0 && faces.size() != static_cast<std::size_t>(n + 1))
            throw std::invalid_argument("simplex '" + nm + "' needs " + std::to_string(n + 1) + " faces");
        while (dim() < n) {
            names_.emplace_back();
            faces_.emplace_back();
        }
        for (auto& f : faces) f.degeneracies = normalize_degeneracies(f.degeneracies);
        SimplexRef r{n, names_[static_cast<std::size_t>(n)].size()};
        names_[static_cast<std::size_t>(n)].push_back(nm);
        faces_[static_cast<std::size_t>(n)].push_back(std::move(faces));
        by_name_[nm] = r;
        return r;
    }

    const DegenerateImage& face_of(SimplexRef s, int i) const {
        return faces_.at(static_cast<std::size_t>(s.dim)).at(s.index).at(static_cast<std::size_t>(i));
    }

    /// d_i of an arbitrary (possibly degenerate) simplex.
    DegenerateImage face(const DegenerateImage& x, int i) const {
        if (i < 0 || i > x.dim() || x.dim() == 0) throw std::out_of_range("face index out of range");
        std::vector<int> out;
        std::optional<int> j = i;
        for (int s : x.degeneracies) {
            if (!j) {
                out.push_back(s);
            } else if (*j < s) {
                out.push_back(s - 1);
            } else if (*j == s || *j == s + 1) {
                j.reset();
            } else {
                out.push_back(s);
                j = *j - 1;
            }
        }
        if (!j) return DegenerateImage{normalize_degeneracies(out), x.base};
        const DegenerateImage& f = face_of(x.base, *j);
        out.insert(out.end(), f.degeneracies.begin(), f.degeneracies.end());
        return DegenerateImage{normalize_degeneracies(out), f.base};
    }

    DegenerateImage degeneracy(const DegenerateImage& x, int i) const {
        if (i < 0 || i > x.dim()) throw std::out_of_range("degeneracy index out of range");
        std::vector<int> w{i};
        w.insert(w.end(), x.degeneracies.begin(), x.degeneracies.end());
        return DegenerateImage{normalize_degeneracies(w), x.base};
    }

    static DegenerateImage simplex(SimplexRef s) { return DegenerateImage{{}, s}; }

    /// The face of a nondegenerate n-simplex spanned by the given increasing vertex positions.
    DegenerateImage restrict_to(SimplexRef s, const std::vector<int>& vertices) const {
        DegenerateImage x = simplex(s);
        int n = s.dim;
        std::vector<bool> keep(static_cast<std::size_t>(n + 1), false);
        for (int v : vertices) keep[static_cast<std::size_t>(v)] = true;
        for (int v = n; v >= 0; --v)
            if (!keep[static_cast<std::size_t>(v)]) x = face(x, v);
        return x;
    }

    /// Face references exist with the right dimension; simplicial identities hold.
    void validate() const {
        for (int n = 1; n <= dim(); ++n)
            for (std::size_t k = 0; k < count(n); ++k) {
                SimplexRef s{n, k};
                for (int i = 0; i <= n; ++i) {
                    const DegenerateImage& f = face_of(s, i);
                    if (f.base.dim < 0 || f.base.dim > dim() || f.base.index >= count(f.base.dim))
                        throw StructuralError("face " + std::to_string(i) + " of '" + name(s) + "' is undefined");
                    if (f.dim() != n - 1)
                        throw StructuralError("face " + std::to_string(i) + " of '" + name(s) + "' has wrong dimension");
                    for (std::size_t w = 0; w < f.degeneracies.size(); ++w)
                        if (f.degeneracies[w] < 0 || f.degeneracies[w] > f.dim() - 1 - static_cast<int>(w))
                            throw StructuralError("inadmissible degeneracy word in face of '" + name(s) + "'");
                }
                if (n < 2) continue;
                for (int j = 1; j <= n; ++j)
                    for (int i = 0; i < j; ++i) {
                        DegenerateImage lhs = face(face_of(s, j), i);
                        DegenerateImage rhs = face(face_of(s, i), j - 1);
                        if (!(lhs == rhs))
                            throw StructuralError("simplicial identity d_" + std::to_string(i) + " d_" +
                                                  std::to_string(j) + " fails on '" + name(s) + "'");
                    }
            }
    }

    std::string format(const DegenerateImage& x) const {
        std::string out;
        for (int s : x.degeneracies) out += "s" + std::to_string(s);
        if (x.degeneracies.empty()) return name(x.base);
        return out + "(" + name(x.base) + ")";
    }

private:
    std::string label_;
    std::vector<std::vector<std::string>> names_;
    std::vector<std::vector<std::vector<DegenerateImage>>> faces_;
    std::map<std::string, SimplexRef> by_name_;
};

/// Euler characteristic from nondegenerate cell counts.
inline long euler_characteristic(const SimplicialSet& X) {
    long chi = 0;
    for (int n = 0; n <= X.dim(); ++n) chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(X.count(n));
    return chi;
}

namespace detail {

inline std::string vertex_name(const std::vector<int>& vs, bool wide) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (wide && i) s += ".";
        s += std::to_string(vs[i]);
    }
    return s;
}

inline SimplicialSet simplex_skeleton(int n, bool boundary) {
    SimplicialSet X;
    const bool wide = n >= 10;
    const int top = boundary ? n - 1 : n;
    for (int k = 0; k <= top; ++k) {
        // subsets of size k+1 of {0..n} in lexicographic order
        std::vector<int> idx(static_cast<std::size_t>(k + 1));
        for (int i = 0; i <= k; ++i) idx[static_cast<std::size_t>(i)] = i;
        for (;;) {
            std::vector<DegenerateImage> faces;
            if (k > 0)
                for (int i = 0; i <= k; ++i) {
                    std::vector<int> f = idx;
                    f.erase(f.begin() + i);
                    faces.push_back(SimplicialSet::simplex(*X.find(vertex_name(f, wide))));
                }
            X.add(k, vertex_name(idx, wide), faces);
            int i = k;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j <= k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return X;
}

}  // namespace detail

/// Ordered simplicial complex generated by the given facets (vertex lists),
/// closed under taking faces; vertices are integers, simplices named by them.
inline SimplicialSet ordered_complex(const std::vector<std::vector<int>>& facets, const std::string& label = "complex") {
    std::set<std::vector<int>> all;
    int max_vertex = 0;
    for (auto f : facets) {
        std::sort(f.begin(), f.end());
        if (f.empty() || std::adjacent_find(f.begin(), f.end()) != f.end())
            throw ConfigError("facet must be a nonempty set of distinct vertices");
        if (f.front() < 0) throw ConfigError("vertices must be non-negative");
        max_vertex = std::max(max_vertex, f.back());
        const std::size_t k = f.size();
        for (unsigned long mask = 1; mask < (1UL << k); ++mask) {
            std::vector<int> s;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (1UL << i)) s.push_back(f[i]);
            all.insert(s);
        }
    }
    const bool wide = max_vertex >= 10;
    std::vector<std::vector<int>> order(all.begin(), all.end());
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    SimplicialSet X;
    for (const auto& s : order) {
        std::vector<DegenerateImage> faces;
        if (s.size() > 1)
            for (std::size_t i = 0; i < s.size(); ++i) {
                std::vector<int> f = s;
                f.erase(f.begin() + static_cast<long>(i));
                faces.push_back(SimplicialSet::simplex(*X.find(detail::vertex_name(f, wide))));
            }
        X.add(static_cast<int>(s.size()) - 1, detail::vertex_name(s, wide), faces);
    }
    X.set_label(label);
    X.validate();
    return X;
}

/// delta(n), boundary_delta(n), sphere(n), rp2.
inline SimplicialSet standard_space(const std::string& name, int n = 0) {
    SimplicialSet X;
    if (name == "delta") {
        if (n < 0) throw ConfigError("delta needs n >= 0");
        X = detail::simplex_skeleton(n, false);
    } else if (name == "boundary_delta") {
        if (n < 1) throw ConfigError("boundary_delta needs n >= 1");
        X = detail::simplex_skeleton(n, true);
    } else if (name == "sphere") {
        if (n < 0) throw ConfigError("sphere needs n >= 0");
        if (n == 0) {
            X.add(0, "*", {});
            X.add(0, "o", {});
        } else {
            SimplexRef pt = X.add(0, "*", {});
            std::vector<int> w;
            for (int i = n - 2; i >= 0; --i) w.push_back(i);
            std::vector<DegenerateImage> faces(static_cast<std::size_t>(n + 1), DegenerateImage{w, pt});
            X.add(n, "e", faces);
        }
    } else if (name == "rp2") {
        SimplexRef v = X.add(0, "v", {});
        SimplexRef w = X.add(0, "w", {});
        auto S = SimplicialSet::simplex;
        SimplexRef a = X.add(1, "a", {S(w), S(v)});
        SimplexRef b = X.add(1, "b", {S(w), S(v)});
        SimplexRef c = X.add(1, "c", {S(v), S(v)});
        X.add(2, "U", {S(b), S(a), S(c)});
        X.add(2, "V", {S(a), S(b), S(c)});
    } else {
        throw ConfigError("unknown space '" + name + "'");
    }
    X.set_label(name == "rp2" ? name : name + ":" + std::to_string(n));
    X.validate();
    return X;
}

// ---- text format --------------------------------------------------------
//   dim 0: v w
//   dim 1: a b c
//   face a: w v
//   face U: b a c
// degenerate faces are written s1s0(x).

inline std::string dump_space(const SimplicialSet& X) {
    std::ostringstream os;
    if (!X.label().empty()) os << "# " << X.label() << "\n";
    for (int n = 0; n <= X.dim(); ++n) {
        os << "dim " << n << ":";
        for (const auto& nm : X.names(n)) os << " " << nm;
        os << "\n";
    }
    for (int n = 1; n <= X.dim(); ++n)
        for (std::size_t k = 0; k < X.count(n); ++k) {
            SimplexRef s{n, k};
            os << "face " << X.name(s) << ":";
            for (int i = 0; i <= n; ++i) os << " " << X.format(X.face_of(s, i));
            os << "\n";
        }
    return os.str();
}

inline SimplicialSet load_space(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::pair<int, std::vector<std::string>>> dims;
    std::map<std::string, std::vector<std::string>> face_rows;
    std::string label;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw ConfigError("space file line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (label.empty()) {
                label = line.substr(1);
                label.erase(0, label.find_first_not_of(' '));
            }
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos) fail("missing ':'");
        std::istringstream head(line.substr(0, colon)), body(line.substr(colon + 1));
        std::string kw, arg;
        head >> kw >> arg;
        std::vector<std::string> toks;
        for (std::string t; body >> t;) toks.push_back(t);
        if (kw == "dim") {
            int n = 0;
            try {
                n = std::stoi(arg);
            } catch (const std::exception&) {
                fail("bad dimension '" + arg + "'");
            }
            dims.emplace_back(n, toks);
        } else if (kw == "face") {
            if (face_rows.count(arg)) fail("duplicate face row for '" + arg + "'");
            face_rows[arg] = toks;
        } else {
            fail("unknown keyword '" + kw + "'");
        }
    }
    std::sort(dims.begin(), dims.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SimplicialSet X;
    static const std::regex degen(R"(^((?:s\d+)+)\((.+)\)$)");
    static const std::regex one(R"(s(\d+))");
    for (const auto& [n, names] : dims) {
        for (const auto& nm : names) {
            std::vector<DegenerateImage> faces;
            if (n > 0) {
                auto it = face_rows.find(nm);
                if (it == face_rows.end()) throw ConfigError("space file: no face row for '" + nm + "'");
                for (const auto& tok : it->second) {
                    std::smatch m;
                    std::string base = tok;
                    std::vector<int> word;
                    if (std::regex_match(tok, m, degen)) {
                        base = m[2];
                        std::string ws = m[1];
                        for (std::sregex_iterator r(ws.begin(), ws.end(), one), e; r != e; ++r)
                            word.push_back(std::stoi((*r)[1]));
                    }
                    auto ref = X.find(base);
                    if (!ref) throw ConfigError("space file: face of '" + nm + "' names unknown simplex '" + base + "'");
                    faces.push_back(DegenerateImage{word, *ref});
                }
                face_rows.erase(it);
            }
            try {
                X.add(n, nm, faces);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("space file: ") + e.what());
            }
        }
    }
    if (!face_rows.empty()) throw ConfigError("space file: face row for undeclared simplex '" + face_rows.begin()->first + "'");
    X.set_label(label);
    try {
        X.validate();
    } catch (const StructuralError& e) {
        throw ConfigError(std::string("space file: ") + e.what());
    }
    return X;
}

inline SimplicialSet load_space_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open space file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return load_space(ss.str());
}

/// Directory of shipped space files (data/spaces), or "" if unknown.
inline std::string shipped_space_dir() {
#ifdef PADIC_DATA_DIR
    return std::string(PADIC_DATA_DIR) + "/spaces";
#else
    return "";
#endif
}

/// Parses "rp2", "sphere:2", "delta:1", "boundary_delta:2"; a bare name such as
/// "torus" resolves to a shipped space file; anything else is a file path.
inline SimplicialSet space_from_spec(const std::string& spec) {
    auto colon = spec.find(':');
    std::string nm = spec.substr(0, colon);
    if (nm == "rp2" || nm == "sphere" || nm == "delta" || nm == "boundary_delta") {
        int n = 0;
        if (colon != std::string::npos) {
            try {
                n = std::stoi(spec.substr(colon + 1));
            } catch (const std::exception&) {
                throw ConfigError("bad dimension in space '" + spec + "'");
            }
        } else if (nm != "rp2") {
            throw ConfigError("space '" + nm + "' needs a dimension, e.g. " + nm + ":2");
        }
        return standard_space(nm, n);
    }
    std::string dir = shipped_space_dir();
    if (!dir.empty() && spec.find('/') == std::string::npos && spec.find('.') == std::string::npos) {
        std::ifstream probe(dir + "/" + spec + ".sset");
        if (probe) return load_space_file(dir + "/" + spec + ".sset");
    }
    return load_space_file(spec);
}

// ---- cochains ------------------------------------------------------------

struct Cochain {
    int degree = 0;
    RingTag ring;
    IntVec values;

    friend bool operator==(const Cochain&, const Cochain&) = default;
};

inline Cochain make_cochain(const SimplicialSet& X, int q, const RingTag& ring, IntVec values) {
    if (values.size() != X.count(q)) throw std::invalid_argument("cochain length does not match simplex count");
    if (ring.is_modular()) values = reduce_mod(values, ring.modulus());
    return Cochain{q, ring, std::move(values)};
}

inline Cochain zero_cochain(const SimplicialSet& X, int q, const RingTag& ring) {
    return Cochain{q, ring, IntVec(X.count(q), BigInt(0))};
}

inline Cochain basis_cochain(const SimplicialSet& X, int q, std::size_t k, const RingTag& ring) {
    Cochain c = zero_cochain(X, q, ring);
    c.values.at(k) = 1;
    return c;
}

/// Value of a cochain on a possibly degenerate simplex (0 on degenerate ones).
inline BigInt evaluate(const Cochain& f, const DegenerateImage& x) {
    if (x.is_degenerate() || x.base.dim != f.degree) return 0;
    return f.values[x.base.index];
}

/// δ(f)(σ) = Σ (-1)^i f(d_i σ) on the normalized cochains.
inline CochainComplex normalized_cochain_complex(const SimplicialSet& X, const RingTag& ring) {
    CochainComplex C(ring, X.counts());
    for (int q = 0; q < X.dim(); ++q) {
        IntMatrix& M = C.d[static_cast<std::size_t>(q)];
        for (std::size_t k = 0; k < X.count(q + 1); ++k)
            for (int i = 0; i <= q + 1; ++i) {
                const DegenerateImage& f = X.face_of(SimplexRef{q + 1, k}, i);
                if (f.is_degenerate()) continue;
                M(k, f.base.index) += (i % 2 == 0) ? 1 : -1;
            }
        if (ring.is_modular())
            for (std::size_t i = 0; i < M.rows(); ++i)
                for (std::size_t j = 0; j < M.cols(); ++j) M(i, j) = mod_floor(M(i, j), ring.modulus());
    }
    C.check();
    return C;
}

inline Cochain coboundary(const SimplicialSet& X, const Cochain& f) {
    if (f.degree >= X.dim()) return zero_cochain(X, f.degree + 1, f.ring);
    CochainComplex C = normalized_cochain_complex(X, f.ring);
    return Cochain{f.degree + 1, f.ring, C.apply_d(f.degree, f.values)};
}

}  // namespace padic
