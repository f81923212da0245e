#pragma once

// Line-oriented tokenizer shared by the machine, TM and memprogram formats.

#include <memalg/error.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace memalg::detail {

struct Token {
    std::string text;
    std::size_t column; // 1-based
};

struct Line {
    std::size_t number; // 1-based
    std::vector<Token> tokens;
};

/// Splits text into non-empty lines of tokens. '#' starts a comment. The
/// characters , : ( ) = and the pair -> are standalone tokens.
std::vector<Line> tokenize(std::string_view text);

/// True for tokens usable as names: no punctuation.
bool is_word(const Token & t);

/// Sequential reader over one line's tokens with positioned errors.
class Cursor {
public:
    explicit Cursor(const Line & line) : _line(line) {}

    bool done() const { return _pos >= _line.tokens.size(); }
    const Token & peek() const;
    bool peek_is(std::string_view text) const { return ! done() && peek().text == text; }

    const Token & next();
    const Token & word(std::string_view what);
    void expect(std::string_view text);
    bool accept(std::string_view text);
    void expect_end();

    [[noreturn]] void fail(const std::string & message) const;
    [[noreturn]] void fail_at(const Token & t, const std::string & message) const;

    std::size_t line_number() const { return _line.number; }

private:
    const Line & _line;
    std::size_t _pos = 0;
};

} // namespace memalg::detail
