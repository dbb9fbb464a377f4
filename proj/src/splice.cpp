#include "flatsplice/splice.hpp"

#include <stdexcept>

namespace flatsplice {

void FlatSplicingRule::validate() const {
    if (gamma.size() > 1) throw std::invalid_argument("rule gamma handle longer than one symbol");
    if (delta.size() > 1) throw std::invalid_argument("rule delta handle longer than one symbol");
}

std::vector<std::size_t> match_sites(const Word& u, const FlatSplicingRule& r) {
    std::vector<std::size_t> sites;
    for (std::size_t gap = 0; gap <= u.size(); ++gap) {
        if (!u.has_suffix_at(gap, r.alpha)) continue;
        if (!u.has_prefix_at(gap, r.beta)) continue;
        sites.push_back(gap);
    }
    return sites;
}

bool partner_matches(const Word& v, const FlatSplicingRule& r) {
    if (v.empty()) return false;
    if (v.size() < r.gamma.size() + r.delta.size()) return false;
    return v.starts_with(r.gamma) && v.ends_with(r.delta);
}

Word apply_rule(const Word& u, const Word& v, const FlatSplicingRule& r, std::size_t site) {
    r.validate();
    if (site > u.size()) throw std::invalid_argument("splice site out of range");
    if (!u.has_suffix_at(site, r.alpha) || !u.has_prefix_at(site, r.beta))
        throw std::invalid_argument("splice site does not match rule contexts");
    if (!partner_matches(v, r))
        throw std::invalid_argument("partner word does not match rule handles");
    Word out;
    for (std::size_t i = 0; i < site; ++i) out.push_back(u[i]);
    out.append(v);
    for (std::size_t i = site; i < u.size(); ++i) out.push_back(u[i]);
    return out;
}

WordSet splice(const Word& u, const Word& v, const FlatSplicingRule& r) {
    r.validate();
    WordSet out;
    if (!partner_matches(v, r)) return out;
    for (std::size_t site : match_sites(u, r)) out.insert(apply_rule(u, v, r, site));
    return out;
}

}  // namespace flatsplice
