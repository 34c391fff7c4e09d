#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace achow {

// Index into a SymbolTable. Parameters come before variables, so symbol order
// is the canonical monomial-comparison order.
struct Symbol {
    uint32_t idx = 0;
    friend bool operator==(Symbol a, Symbol b) { return a.idx == b.idx; }
    friend bool operator!=(Symbol a, Symbol b) { return a.idx != b.idx; }
    friend bool operator<(Symbol a, Symbol b) { return a.idx < b.idx; }
};

// Immutable, shared between all values of one session. Parameters a1..ar span
// the base field k = Q(a1,...,ar); everything after them is a variable.
class SymbolTable {
public:
    SymbolTable(std::vector<std::string> params, std::vector<std::string> vars);

    size_t size() const { return names_.size(); }
    size_t param_count() const { return n_params_; }
    const std::string& name(Symbol s) const { return names_[s.idx]; }
    bool is_param(Symbol s) const { return s.idx < n_params_; }
    std::optional<Symbol> find(const std::string& name) const;
    Symbol require(const std::string& name) const;

    std::vector<Symbol> params() const;

    // Alphanumeric order with trailing-number awareness: a2 < a10.
    static bool name_less(const std::string& a, const std::string& b);

private:
    std::vector<std::string> names_;
    size_t n_params_;
};

using TablePtr = std::shared_ptr<const SymbolTable>;

TablePtr make_table(std::vector<std::string> params, std::vector<std::string> vars);

// True if the two pointers denote compatible tables (same object or equal contents).
bool same_table(const TablePtr& a, const TablePtr& b);

}  // namespace achow
