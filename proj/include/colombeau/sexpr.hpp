#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace colombeau {

// Parenthesized prefix expression: an atom or a list. Atoms are bare tokens;
// double quotes admit spaces and parens. Comments run from ';' to the end of
// the line.
struct SExpr {
    bool leaf = true;
    std::string atom;
    std::vector<SExpr> kids;
    int line = 0;  // 1-based source position, 0 when synthesized
    int col = 0;

    static SExpr make_atom(std::string a);
    static SExpr list(std::vector<SExpr> kids);

    // List whose first element is the given head atom.
    bool is_list(std::string_view head) const;
    std::size_t size() const { return kids.size(); }
    // Bounds-checked child access; throws ParseError naming the position.
    const SExpr& kid(std::size_t i) const;
    // The head atom of a list ("" for leaves and headless lists).
    std::string_view head() const;
};

// Exactly one expression, with trailing whitespace/comments permitted.
SExpr parse_sexpr(std::string_view text);

// A whole file of top-level expressions.
std::vector<SExpr> parse_sexprs(std::string_view text);

std::string print_sexpr(const SExpr& e);

}  // namespace colombeau
