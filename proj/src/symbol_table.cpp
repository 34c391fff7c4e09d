#include "achow/symbol_table.hpp"

#include <algorithm>
#include <set>

#include "achow/errors.hpp"

namespace achow {

bool SymbolTable::name_less(const std::string& a, const std::string& b) {
    auto split = [](const std::string& s) {
        size_t i = s.size();
        while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
        long num = -1;
        if (i < s.size() && s.size() - i <= 9) num = std::stol(s.substr(i));
        return std::pair<std::string, long>(s.substr(0, i), num);
    };
    auto [sa, na] = split(a);
    auto [sb, nb] = split(b);
    if (sa != sb) return sa < sb;
    if (na != nb) return na < nb;
    return a < b;
}

SymbolTable::SymbolTable(std::vector<std::string> params, std::vector<std::string> vars) {
    std::sort(params.begin(), params.end(), name_less);
    std::sort(vars.begin(), vars.end(), name_less);
    std::set<std::string> seen;
    for (const auto& p : params) {
        if (!seen.insert(p).second) throw InputError("duplicate symbol: " + p);
        names_.push_back(p);
    }
    n_params_ = names_.size();
    for (const auto& v : vars) {
        if (!seen.insert(v).second) throw InputError("duplicate symbol: " + v);
        names_.push_back(v);
    }
}

std::optional<Symbol> SymbolTable::find(const std::string& name) const {
    for (uint32_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return Symbol{i};
    return std::nullopt;
}

Symbol SymbolTable::require(const std::string& name) const {
    auto s = find(name);
    if (!s) throw InputError("unknown symbol: " + name);
    return *s;
}

std::vector<Symbol> SymbolTable::params() const {
    std::vector<Symbol> out;
    for (uint32_t i = 0; i < n_params_; ++i) out.push_back(Symbol{i});
    return out;
}

TablePtr make_table(std::vector<std::string> params, std::vector<std::string> vars) {
    return std::make_shared<SymbolTable>(std::move(params), std::move(vars));
}

bool same_table(const TablePtr& a, const TablePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->size() != b->size() || a->param_count() != b->param_count()) return false;
    for (uint32_t i = 0; i < a->size(); ++i)
        if (a->name(Symbol{i}) != b->name(Symbol{i})) return false;
    return true;
}

}  // namespace achow
