#include <memalg/cardinal.hpp>
#include <memalg/error.hpp>

#include <cctype>
#include <charconv>

namespace memalg {

namespace {
    class ExpressionParser {
    public:
        ExpressionParser(std::string_view text, Derivation * trace) : _text(text), _trace(trace) {}

        Cardinal parse()
        {
            auto r = sum();
            skip_space();
            if (_pos != _text.size())
                fail("unexpected '" + std::string(1, _text[_pos]) + "'");
            return r;
        }

    private:
        std::string_view _text;
        Derivation * _trace;
        std::size_t _pos = 0;

        [[noreturn]] void fail(const std::string & message) const
        {
            throw ParseError(1, _pos + 1, message);
        }

        void skip_space()
        {
            while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos])))
                ++_pos;
        }

        bool accept(char c)
        {
            skip_space();
            if (_pos < _text.size() && _text[_pos] == c) {
                ++_pos;
                return true;
            }
            return false;
        }

        void expect(char c)
        {
            if (! accept(c))
                fail(std::string("expected '") + c + "'");
        }

        Cardinal sum()
        {
            auto r = product();
            while (accept('+'))
                r = card_add(r, product(), _trace);
            return r;
        }

        Cardinal product()
        {
            auto r = power();
            while (accept('*'))
                r = card_mul(r, power(), _trace);
            return r;
        }

        Cardinal power()
        {
            auto base = atom();
            if (accept('^'))
                return card_pow(base, power(), _trace);
            return base;
        }

        std::uint64_t integer()
        {
            skip_space();
            auto begin = _text.data() + _pos;
            auto end = _text.data() + _text.size();
            std::uint64_t value = 0;
            auto [ptr, ec] = std::from_chars(begin, end, value);
            if (ptr == begin)
                fail("expected an integer");
            if (ec == std::errc::result_out_of_range)
                fail("integer literal exceeds 64 bits");
            _pos += static_cast<std::size_t>(ptr - begin);
            return value;
        }

        Cardinal atom()
        {
            skip_space();
            if (_pos >= _text.size())
                fail("unexpected end of expression");
            if (accept('('))  {
                auto r = sum();
                expect(')');
                return r;
            }
            if (std::isdigit(static_cast<unsigned char>(_text[_pos])))
                return Cardinal::finite(integer());

            auto start = _pos;
            while (_pos < _text.size() && std::isalpha(static_cast<unsigned char>(_text[_pos])))
                ++_pos;
            std::string word(_text.substr(start, _pos - start));
            for (auto & c : word)
                c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            if (word == "beth" || word == "finite") {
                expect('(');
                auto v = integer();
                expect(')');
                return word == "beth" ? Cardinal::beth(v) : Cardinal::finite(v);
            }
            _pos = start;
            fail("expected an integer, beth(n) or '('");
        }
    };
}

Cardinal evaluate_cardinal_expression(std::string_view text, Derivation * trace)
{
    return ExpressionParser(text, trace).parse();
}

} // namespace memalg
