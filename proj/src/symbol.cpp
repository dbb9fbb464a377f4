#include "flatsplice/symbol.hpp"

#include <deque>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace flatsplice {

namespace {

// Process-wide intern table. Names live in a deque so references stay valid
// as the table grows; the mutex makes interning safe from any thread.
struct InternTable {
    std::mutex mu;
    std::unordered_map<std::string_view, std::uint32_t> index;
    std::deque<std::string> names;

    InternTable() { names.emplace_back(); index.emplace(names.back(), 0); }
};

InternTable& table() {
    static InternTable t;
    return t;
}

}  // namespace

Symbol Symbol::intern(std::string_view name) {
    if (name.empty()) throw std::invalid_argument("symbol name must be nonempty");
    InternTable& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    auto it = t.index.find(name);
    if (it != t.index.end()) return Symbol(it->second);
    t.names.emplace_back(name);
    std::uint32_t id = static_cast<std::uint32_t>(t.names.size() - 1);
    t.index.emplace(t.names.back(), id);
    return Symbol(id);
}

const std::string& Symbol::name() const {
    InternTable& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    return t.names[id_];
}

bool Symbol::operator<(const Symbol& o) const {
    if (id_ == o.id_) return false;
    return name() < o.name();
}

Word Word::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<Symbol> syms;
    std::string tok;
    int eps_count = 0;
    while (in >> tok) {
        if (tok == "eps") { ++eps_count; continue; }
        syms.push_back(Symbol::intern(tok));
    }
    if (eps_count > 1 || (eps_count == 1 && !syms.empty()))
        throw std::invalid_argument("`eps` must stand alone in a word");
    return Word(std::move(syms));
}

Word Word::subword(std::size_t pos, std::size_t len) const {
    std::vector<Symbol> out(syms_.begin() + pos, syms_.begin() + pos + len);
    return Word(std::move(out));
}

bool Word::has_suffix_at(std::size_t gap, const Word& w) const {
    if (w.size() > gap) return false;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!(syms_[gap - w.size() + i] == w[i])) return false;
    return true;
}

bool Word::has_prefix_at(std::size_t pos, const Word& w) const {
    if (pos + w.size() > syms_.size()) return false;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!(syms_[pos + i] == w[i])) return false;
    return true;
}

std::string Word::str() const {
    if (syms_.empty()) return "eps";
    std::string out;
    for (std::size_t i = 0; i < syms_.size(); ++i) {
        if (i) out += ' ';
        out += syms_[i].name();
    }
    return out;
}

bool Word::operator<(const Word& o) const {
    if (syms_.size() != o.syms_.size()) return syms_.size() < o.syms_.size();
    for (std::size_t i = 0; i < syms_.size(); ++i) {
        if (syms_[i] == o.syms_[i]) continue;
        return syms_[i] < o.syms_[i];
    }
    return false;
}

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.append(b);
    return out;
}

Word concat(const Word& a, const Word& b, const Word& c) {
    Word out = a;
    out.append(b);
    out.append(c);
    return out;
}

std::string to_string(const WordSet& ws) {
    std::string out;
    for (const Word& w : ws) {
        out += w.str();
        out += '\n';
    }
    return out;
}

}  // namespace flatsplice
