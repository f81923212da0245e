#include "lexer.hpp"

#include <cctype>

namespace memalg::detail {

namespace {
    bool is_punct(char c)
    {
        return c == ',' || c == ':' || c == '(' || c == ')' || c == '=';
    }
}

std::vector<Line> tokenize(std::string_view text)
{
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        auto raw = text.substr(start, end - start);
        ++number;

        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            char c = raw[i];
            if (c == '#')
                break;
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            if (is_punct(c)) {
                line.tokens.push_back({std::string(1, c), i + 1});
                ++i;
                continue;
            }
            if (c == '-' && i + 1 < raw.size() && raw[i + 1] == '>') {
                line.tokens.push_back({"->", i + 1});
                i += 2;
                continue;
            }
            auto begin = i;
            while (i < raw.size()) {
                char d = raw[i];
                if (std::isspace(static_cast<unsigned char>(d)) || is_punct(d) || d == '#')
                    break;
                if (d == '-' && i + 1 < raw.size() && raw[i + 1] == '>')
                    break;
                ++i;
            }
            line.tokens.push_back({std::string(raw.substr(begin, i - begin)), begin + 1});
        }
        if (! line.tokens.empty())
            lines.push_back(std::move(line));
        if (end == text.size())
            break;
        start = end + 1;
    }
    return lines;
}

bool is_word(const Token & t)
{
    return ! t.text.empty() && t.text != "->" && ! (t.text.size() == 1 && is_punct(t.text[0]));
}

const Token & Cursor::peek() const
{
    if (done())
        fail("unexpected end of line");
    return _line.tokens[_pos];
}

const Token & Cursor::next()
{
    auto & t = peek();
    ++_pos;
    return t;
}

const Token & Cursor::word(std::string_view what)
{
    auto & t = peek();
    if (! is_word(t))
        fail_at(t, "expected " + std::string(what) + ", found '" + t.text + "'");
    ++_pos;
    return t;
}

void Cursor::expect(std::string_view text)
{
    auto & t = peek();
    if (t.text != text)
        fail_at(t, "expected '" + std::string(text) + "', found '" + t.text + "'");
    ++_pos;
}

bool Cursor::accept(std::string_view text)
{
    if (peek_is(text)) {
        ++_pos;
        return true;
    }
    return false;
}

void Cursor::expect_end()
{
    if (! done())
        fail_at(peek(), "unexpected '" + peek().text + "'");
}

void Cursor::fail(const std::string & message) const
{
    std::size_t column = 1;
    if (! _line.tokens.empty()) {
        auto & last = _line.tokens.back();
        column = _pos < _line.tokens.size() ? _line.tokens[_pos].column : last.column + last.text.size();
    }
    throw ParseError(_line.number, column, message);
}

void Cursor::fail_at(const Token & t, const std::string & message) const
{
    throw ParseError(_line.number, t.column, message);
}

} // namespace memalg::detail
