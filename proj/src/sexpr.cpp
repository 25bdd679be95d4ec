#include "colombeau/sexpr.hpp"

#include <cctype>

#include "colombeau/errors.hpp"

namespace colombeau {

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    char take() {
        const char c = text[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }

    void skip_blank() {
        while (!done()) {
            const char c = peek();
            if (c == ';') {
                while (!done() && peek() != '\n') take();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                take();
            } else {
                return;
            }
        }
    }
};

bool atom_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ';' &&
           c != '"';
}

SExpr parse_one(Cursor& cur) {
    cur.skip_blank();
    if (cur.done()) throw ParseError("expected an expression", cur.line, cur.col);

    const int line = cur.line, col = cur.col;
    const char c = cur.peek();

    if (c == ')') throw ParseError("unmatched ')'", line, col);

    if (c == '(') {
        cur.take();
        SExpr e;
        e.leaf = false;
        e.line = line;
        e.col = col;
        while (true) {
            cur.skip_blank();
            if (cur.done()) throw ParseError("unterminated '('", line, col);
            if (cur.peek() == ')') {
                cur.take();
                return e;
            }
            e.kids.push_back(parse_one(cur));
        }
    }

    if (c == '"') {
        cur.take();
        SExpr e;
        e.line = line;
        e.col = col;
        while (true) {
            if (cur.done()) throw ParseError("unterminated string", line, col);
            const char d = cur.take();
            if (d == '"') return e;
            if (d == '\\') {
                if (cur.done()) throw ParseError("unterminated escape", cur.line, cur.col);
                e.atom.push_back(cur.take());
            } else {
                e.atom.push_back(d);
            }
        }
    }

    SExpr e;
    e.line = line;
    e.col = col;
    while (!cur.done() && atom_char(cur.peek())) e.atom.push_back(cur.take());
    if (e.atom.empty()) throw ParseError("stray character", line, col);
    return e;
}

bool needs_quotes(const std::string& atom) {
    if (atom.empty()) return true;
    for (char c : atom)
        if (!atom_char(c)) return true;
    return false;
}

void print_atom(std::string& out, const std::string& atom) {
    if (!needs_quotes(atom)) {
        out += atom;
        return;
    }
    out.push_back('"');
    for (char c : atom) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
}

std::size_t flat_length(const SExpr& e) {
    if (e.leaf) return e.atom.size() + 2;
    std::size_t n = 2;
    for (const auto& k : e.kids) n += flat_length(k) + 1;
    return n;
}

void print_rec(std::string& out, const SExpr& e, int indent) {
    if (e.leaf) {
        print_atom(out, e.atom);
        return;
    }
    out.push_back('(');
    const bool flat = flat_length(e) <= 88;
    for (std::size_t i = 0; i < e.kids.size(); ++i) {
        if (i > 0) {
            if (flat) {
                out.push_back(' ');
            } else {
                out.push_back('\n');
                out.append(static_cast<std::size_t>(indent) + 2, ' ');
            }
        }
        print_rec(out, e.kids[i], flat ? indent : indent + 2);
    }
    out.push_back(')');
}

}  // namespace

SExpr SExpr::make_atom(std::string a) {
    SExpr e;
    e.atom = std::move(a);
    return e;
}

SExpr SExpr::list(std::vector<SExpr> kids) {
    SExpr e;
    e.leaf = false;
    e.kids = std::move(kids);
    return e;
}

bool SExpr::is_list(std::string_view h) const {
    return !leaf && !kids.empty() && kids[0].leaf && kids[0].atom == h;
}

const SExpr& SExpr::kid(std::size_t i) const {
    if (leaf || i >= kids.size())
        throw ParseError("form is missing argument " + std::to_string(i), line, col);
    return kids[i];
}

std::string_view SExpr::head() const {
    if (leaf || kids.empty() || !kids[0].leaf) return {};
    return kids[0].atom;
}

SExpr parse_sexpr(std::string_view text) {
    Cursor cur{text};
    SExpr e = parse_one(cur);
    cur.skip_blank();
    if (!cur.done()) throw ParseError("trailing input after the expression", cur.line, cur.col);
    return e;
}

std::vector<SExpr> parse_sexprs(std::string_view text) {
    Cursor cur{text};
    std::vector<SExpr> out;
    while (true) {
        cur.skip_blank();
        if (cur.done()) return out;
        out.push_back(parse_one(cur));
    }
}

std::string print_sexpr(const SExpr& e) {
    std::string out;
    print_rec(out, e, 0);
    return out;
}

}  // namespace colombeau
