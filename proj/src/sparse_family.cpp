#include "a2lab/sparse_family.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace a2lab {

void canonical_sort(std::vector<Interval>& family) {
    std::sort(family.begin(), family.end(), [](const Interval& x, const Interval& y) {
        if (x.lo != y.lo) return x.lo < y.lo;
        return x.hi > y.hi; // outermost first among shared left endpoints
    });
}

std::vector<long> laminar_parents(const std::vector<Interval>& fam) {
    std::vector<long> parent(fam.size(), -1);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        while (!stack.empty() && fam[stack.back()].hi <= fam[i].lo) stack.pop_back();
        if (!stack.empty()) {
            if (!fam[stack.back()].contains(fam[i]))
                throw std::invalid_argument("laminar_parents: family is not laminar");
            parent[i] = static_cast<long>(stack.back());
        }
        stack.push_back(i);
    }
    return parent;
}

SparseCheckResult check_sparse(const std::vector<Interval>& family, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("check_sparse: gamma must lie in (0, 1)");
    std::vector<Interval> fam = family;
    for (const Interval& iv : fam) require_nonempty(iv, "check_sparse");
    canonical_sort(fam);
    const std::vector<long> parent = laminar_parents(fam);

    // maximal children per member, in left-to-right order
    std::vector<std::vector<std::size_t>> children(fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i)
        if (parent[i] >= 0) children[static_cast<std::size_t>(parent[i])].push_back(i);

    SparseCheckResult res;
    res.sparse = true;
    res.worst_ratio = 1.0;
    res.certificate.resize(fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i) {
        double cursor = fam[i].lo;
        double residual = 0.0;
        auto& cert = res.certificate[i];
        for (std::size_t c : children[i]) {
            if (fam[c].lo > cursor) {
                cert.push_back(Interval(cursor, fam[c].lo));
                residual += fam[c].lo - cursor;
            }
            cursor = std::max(cursor, fam[c].hi);
        }
        if (cursor < fam[i].hi) {
            cert.push_back(Interval(cursor, fam[i].hi));
            residual += fam[i].hi - cursor;
        }
        const double ratio = residual / fam[i].length();
        if (ratio < res.worst_ratio) {
            res.worst_ratio = ratio;
            res.worst_index = i;
        }
        if (ratio < gamma) res.sparse = false;
    }
    return res;
}

SparseFamily make_sparse_family(std::vector<Interval> family, double gamma) {
    canonical_sort(family);
    SparseCheckResult res = check_sparse(family, gamma);
    if (!res.sparse) {
        std::ostringstream msg;
        msg << "make_sparse_family: not " << gamma << "-sparse (worst residual ratio "
            << res.worst_ratio << ")";
        throw std::invalid_argument(msg.str());
    }
    SparseFamily out;
    out.intervals = std::move(family);
    out.gamma = gamma;
    out.certificate = std::move(res.certificate);
    return out;
}

std::vector<Interval> nested_family(long kmax) {
    if (kmax < 1) throw std::invalid_argument("nested_family: kmax must be >= 1");
    if (kmax > 1070) throw std::invalid_argument("nested_family: 2^-kmax underflows");
    std::vector<Interval> fam;
    fam.reserve(static_cast<std::size_t>(kmax));
    for (long k = 1; k <= kmax; ++k)
        fam.push_back(Interval(0.0, std::ldexp(1.0, static_cast<int>(-k))));
    canonical_sort(fam);
    return fam;
}

std::vector<Interval> band_family(int a, long kmax, long jmax) {
    if (a < 2) throw std::invalid_argument("band_family: requires a >= 2");
    if (kmax < 1 || jmax < 0) throw std::invalid_argument("band_family: bad kmax/jmax");
    std::vector<Interval> fam;
    for (long k = 1; k <= kmax; ++k) {
        const double hi = std::ldexp(1.0, static_cast<int>(-k));
        for (long j = a + k; j <= a + k + jmax; ++j) {
            if (j - k > 50) break; // 2^-k - 2^-j collapses to 2^-k past this
            const double lo = hi - std::ldexp(1.0, static_cast<int>(-j));
            fam.push_back(Interval(lo, hi));
        }
    }
    canonical_sort(fam);
    return fam;
}

std::vector<Interval> parse_family_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    std::map<std::string, long> kv;
    if (colon != std::string::npos) {
        std::stringstream rest(spec.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("family spec: expected key=value in '" + spec + "'");
            kv[item.substr(0, eq)] = std::stol(item.substr(eq + 1));
        }
    }
    if (kind == "nested") {
        if (!kv.count("kmax")) throw std::invalid_argument("family spec: nested needs kmax=");
        return nested_family(kv["kmax"]);
    }
    if (kind == "bands") {
        if (!kv.count("a")) throw std::invalid_argument("family spec: bands needs a=");
        const long kmax = kv.count("kmax") ? kv["kmax"] : 8;
        const long jmax = kv.count("jmax") ? kv["jmax"] : 40;
        return band_family(static_cast<int>(kv["a"]), kmax, jmax);
    }
    throw std::invalid_argument("family spec: unknown kind '" + kind + "'");
}

} // namespace a2lab
