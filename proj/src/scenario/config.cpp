#include "negmass/scenario/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include "negmass/scenario/output.hpp"

namespace negmass::scenario {

std::string to_string(ValueType t)
{
    switch (t)
    {
    case ValueType::number: return "number";
    case ValueType::integer: return "integer";
    case ValueType::boolean: return "boolean";
    case ValueType::string: return "string";
    case ValueType::number_array: return "number array";
    }
    return "unknown";
}

const KindSpec* find_kind(std::string_view name)
{
    for (const auto& k : kind_specs())
        if (k.name == name)
            return &k;
    return nullptr;
}

namespace {

const Value& lookup(const Scenario& s, const std::string& key, ValueType want)
{
    const auto it = s.params.find(key);
    if (it == s.params.end())
        throw std::out_of_range("scenario has no key " + s.kind + "." + key);
    const bool ok = it->second.type == want
                    || (want == ValueType::number && it->second.type == ValueType::integer);
    if (!ok)
        throw std::invalid_argument("scenario key " + s.kind + "." + key + " is not a "
                                    + to_string(want));
    return it->second;
}

}  // namespace

double Scenario::number(const std::string& key) const
{
    return lookup(*this, key, ValueType::number).number;
}

std::int64_t Scenario::integer(const std::string& key) const
{
    return static_cast<std::int64_t>(lookup(*this, key, ValueType::integer).number);
}

bool Scenario::flag(const std::string& key) const
{
    return lookup(*this, key, ValueType::boolean).boolean;
}

const std::string& Scenario::text(const std::string& key) const
{
    return lookup(*this, key, ValueType::string).text;
}

const std::vector<double>& Scenario::array(const std::string& key) const
{
    return lookup(*this, key, ValueType::number_array).array;
}

bool operator==(const Scenario& a, const Scenario& b)
{
    const auto& x = a.integrator;
    const auto& y = b.integrator;
    return a.name == b.name && a.kind == b.kind && a.seed == b.seed && a.output == b.output
           && a.params == b.params && x.rel_tol == y.rel_tol && x.abs_tol == y.abs_tol
           && x.max_step == y.max_step && x.max_steps == y.max_steps
           && x.initial_step == y.initial_step;
}

namespace {

std::string summarize(const std::vector<Diagnostic>& diags)
{
    std::ostringstream out;
    out << diags.size() << " scenario error" << (diags.size() == 1 ? "" : "s");
    for (const auto& d : diags)
    {
        out << "\n  ";
        if (d.line > 0)
            out << "line " << d.line << ": ";
        if (!d.path.empty())
            out << d.path << ": ";
        out << d.message;
    }
    return out.str();
}

}  // namespace

ScenarioError::ScenarioError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(summarize(diagnostics)), diagnostics_(std::move(diagnostics))
{
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct RawEntry
{
    Value value;
    int line;
};

using RawSection = std::map<std::string, RawEntry>;

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool valid_identifier(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
}

/// Drops a trailing # comment that is not inside a string.
std::string_view strip_comment(std::string_view line)
{
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i)
    {
        const char c = line[i];
        if (in_string && c == '\\')
            ++i;
        else if (c == '"')
            in_string = !in_string;
        else if (c == '#' && !in_string)
            return line.substr(0, i);
    }
    return line;
}

std::optional<double> parse_number(std::string_view s)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    if (s.empty())
        return std::nullopt;
    double x = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        return std::nullopt;
    return x;
}

bool looks_integral(std::string_view s)
{
    s = trim(s);
    if (!s.empty() && (s.front() == '+' || s.front() == '-'))
        s.remove_prefix(1);
    return !s.empty()
           && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::optional<Value> parse_value(std::string_view s, std::string& why)
{
    s = trim(s);
    if (s.empty())
    {
        why = "missing value";
        return std::nullopt;
    }
    if (s == "true" || s == "false")
        return Value::of(s == "true");
    if (s.front() == '"')
    {
        std::string out;
        std::size_t i = 1;
        for (; i < s.size() && s[i] != '"'; ++i)
        {
            if (s[i] == '\\' && i + 1 < s.size())
            {
                const char e = s[++i];
                out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
            }
            else
                out += s[i];
        }
        if (i >= s.size() || i + 1 != s.size())
        {
            why = "unterminated or malformed string";
            return std::nullopt;
        }
        return Value::of(std::move(out));
    }
    if (s.front() == '[')
    {
        if (s.back() != ']')
        {
            why = "array must close on the same line";
            return std::nullopt;
        }
        std::vector<double> items;
        std::string_view body = trim(s.substr(1, s.size() - 2));
        while (!body.empty())
        {
            const auto comma = body.find(',');
            const auto item = trim(body.substr(0, comma));
            if (item.empty() && comma == std::string_view::npos)
                break;  // trailing comma
            const auto x = parse_number(item);
            if (!x)
            {
                why = "array items must be numbers, got '" + std::string(item) + "'";
                return std::nullopt;
            }
            items.push_back(*x);
            if (comma == std::string_view::npos)
                break;
            body = trim(body.substr(comma + 1));
        }
        return Value::of(std::move(items));
    }
    if (const auto x = parse_number(s))
    {
        if (!looks_integral(s))
            return Value::of(*x);
        if (std::fabs(*x) > 0x1.0p53)
        {
            why = "integer out of range (magnitude at most 2^53)";
            return std::nullopt;
        }
        return Value::of_int(static_cast<std::int64_t>(*x));
    }
    why = "cannot parse value '" + std::string(s) + "'";
    return std::nullopt;
}

/// Accepts an integer-valued number for an integer key and any integer for
/// a number key.
std::optional<Value> coerce(const Value& v, ValueType want)
{
    if (v.type == want)
        return v;
    if (want == ValueType::number && v.type == ValueType::integer)
        return Value::of(v.number);
    if (want == ValueType::integer && v.type == ValueType::number && std::isfinite(v.number)
        && v.number == std::round(v.number) && std::fabs(v.number) <= 0x1.0p53)
        return Value::of_int(static_cast<std::int64_t>(v.number));
    return std::nullopt;
}

struct Fixed
{
    const char* name;
    ValueType type;
};

constexpr Fixed top_keys[] = {{"name", ValueType::string},
                              {"kind", ValueType::string},
                              {"seed", ValueType::integer}};
constexpr Fixed integrator_keys[] = {{"rel_tol", ValueType::number},
                                     {"abs_tol", ValueType::number},
                                     {"max_step", ValueType::number},
                                     {"max_steps", ValueType::integer},
                                     {"initial_step", ValueType::number}};
constexpr Fixed output_keys[] = {{"csv", ValueType::boolean}, {"json", ValueType::boolean}};

}  // namespace

Scenario parse_scenario(std::string_view text)
{
    std::vector<Diagnostic> diags;
    std::map<std::string, RawSection> sections;  // "" is the top level
    std::map<std::string, int> section_lines;
    std::string current;
    sections[""];

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        const auto nl = text.find('\n', pos);
        const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                       : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const auto line = trim(strip_comment(raw));
        if (line.empty())
            continue;
        if (line.front() == '[')
        {
            const auto name = trim(line.substr(1, line.size() - 1 - (line.back() == ']')));
            if (line.back() != ']' || !valid_identifier(name))
            {
                diags.push_back({line_no, "", "malformed section header"});
                continue;
            }
            current = std::string(name);
            if (section_lines.count(current))
                diags.push_back({line_no, current, "duplicate section"});
            section_lines[current] = line_no;
            sections[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
        {
            diags.push_back({line_no, "", "expected 'key = value'"});
            continue;
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string path = current.empty() ? key : current + "." + key;
        if (!valid_identifier(key))
        {
            diags.push_back({line_no, path, "invalid key"});
            continue;
        }
        std::string why;
        auto value = parse_value(line.substr(eq + 1), why);
        if (!value)
        {
            diags.push_back({line_no, path, why});
            continue;
        }
        auto& sec = sections[current];
        if (sec.count(key))
        {
            diags.push_back({line_no, path, "duplicate key"});
            continue;
        }
        sec[key] = {std::move(*value), line_no};
    }

    Scenario s;
    auto take_fixed = [&](const std::string& section, std::span<const Fixed> keys,
                          auto assign) {
        const auto it = sections.find(section);
        if (it == sections.end())
            return;
        for (const auto& [key, entry] : it->second)
        {
            const std::string path = section.empty() ? key : section + "." + key;
            const auto spec = std::find_if(keys.begin(), keys.end(),
                                           [&](const Fixed& f) { return key == f.name; });
            if (spec == keys.end())
            {
                diags.push_back({entry.line, path, "unknown key"});
                continue;
            }
            const auto v = coerce(entry.value, spec->type);
            if (!v)
            {
                diags.push_back({entry.line, path,
                                 "expected " + to_string(spec->type) + ", got "
                                     + to_string(entry.value.type)});
                continue;
            }
            assign(key, *v, entry.line, path);
        }
    };

    bool have_name = false, have_kind = false;
    take_fixed("", top_keys, [&](const std::string& key, const Value& v, int line,
                                 const std::string& path) {
        if (key == "name")
        {
            s.name = v.text;
            have_name = true;
            if (!valid_identifier(s.name))
                diags.push_back({line, path, "name may only contain letters, digits, '_' and '-'"});
        }
        else if (key == "kind")
        {
            s.kind = v.text;
            have_kind = true;
        }
        else if (v.number < 0.0)
            diags.push_back({line, path, "seed must be non-negative"});
        else
            s.seed = static_cast<std::uint64_t>(v.number);
    });
    if (!have_name)
        diags.push_back({0, "name", "missing required key"});
    if (!have_kind)
        diags.push_back({0, "kind", "missing required key"});

    take_fixed("integrator", integrator_keys,
               [&](const std::string& key, const Value& v, int line, const std::string& path) {
                   if (key == "rel_tol")
                       s.integrator.rel_tol = v.number;
                   else if (key == "abs_tol")
                       s.integrator.abs_tol = v.number;
                   else if (key == "max_step")
                       s.integrator.max_step = v.number;
                   else if (key == "initial_step")
                       s.integrator.initial_step = v.number;
                   else if (v.number < 1)
                       diags.push_back({line, path, "max_steps must be >= 1"});
                   else
                       s.integrator.max_steps = static_cast<std::size_t>(v.number);
               });
    try
    {
        s.integrator.validate();
    }
    catch (const std::exception& e)
    {
        diags.push_back({section_lines.count("integrator") ? section_lines["integrator"] : 0,
                         "integrator", e.what()});
    }
    take_fixed("output", output_keys,
               [&](const std::string& key, const Value& v, int, const std::string&) {
                   (key == "csv" ? s.output.csv : s.output.json) = v.boolean;
               });

    const KindSpec* kind = have_kind ? find_kind(s.kind) : nullptr;
    if (have_kind && !kind)
        diags.push_back({sections[""]["kind"].line, "kind", "unknown kind '" + s.kind + "'"});

    for (const auto& [name, line] : section_lines)
    {
        const bool known = name == "integrator" || name == "output" || (kind && name == kind->name);
        if (!known)
            diags.push_back({line, name, "unknown section"});
    }

    if (kind)
    {
        const RawSection empty;
        const auto it = sections.find(kind->name);
        const RawSection& sec = it == sections.end() ? empty : it->second;
        for (const auto& [key, entry] : sec)
        {
            const std::string path = kind->name + "." + key;
            const auto spec = std::find_if(kind->keys.begin(), kind->keys.end(),
                                           [&](const KeySpec& k) { return k.name == key; });
            if (spec == kind->keys.end())
            {
                diags.push_back({entry.line, path, "unknown key"});
                continue;
            }
            auto v = coerce(entry.value, spec->type);
            if (!v)
            {
                diags.push_back({entry.line, path,
                                 "expected " + to_string(spec->type) + ", got "
                                     + to_string(entry.value.type)});
                continue;
            }
            if (!spec->choices.empty()
                && std::find(spec->choices.begin(), spec->choices.end(), v->text)
                       == spec->choices.end())
            {
                std::string allowed;
                for (const auto& c : spec->choices)
                    allowed += (allowed.empty() ? "" : ", ") + c;
                diags.push_back({entry.line, path,
                                 "'" + v->text + "' is not one of: " + allowed});
                continue;
            }
            s.params[key] = std::move(*v);
        }
        const int kind_line = section_lines.count(kind->name) ? section_lines[kind->name] : 0;
        for (const auto& spec : kind->keys)
        {
            if (s.params.count(spec.name) || sec.count(spec.name))
                continue;
            if (spec.required)
                diags.push_back({kind_line, kind->name + "." + spec.name, "missing required key"});
            else
                s.params[spec.name] = spec.fallback;
        }
    }

    if (!diags.empty())
    {
        std::stable_sort(diags.begin(), diags.end(),
                         [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
        throw ScenarioError(std::move(diags));
    }
    return s;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string quote(const std::string& s)
{
    std::string out = "\"";
    for (const char c : s)
    {
        if (c == '"' || c == '\\')
            out += '\\';
        if (c == '\n')
            out += "\\n";
        else if (c == '\t')
            out += "\\t";
        else
            out += c;
    }
    return out + "\"";
}

std::string render(const Value& v)
{
    switch (v.type)
    {
    case ValueType::integer: return std::to_string(static_cast<std::int64_t>(v.number));
    case ValueType::number:
    {
        std::string s = format_number(v.number);
        // Keep integral numbers typed as numbers on the way back in.
        if (s.find_first_of(".eEn") == std::string::npos)
            s += ".0";
        return s;
    }
    case ValueType::boolean: return v.boolean ? "true" : "false";
    case ValueType::string: return quote(v.text);
    case ValueType::number_array:
    {
        std::string s = "[";
        for (std::size_t i = 0; i < v.array.size(); ++i)
            s += (i ? ", " : "") + format_number(v.array[i]);
        return s + "]";
    }
    }
    return {};
}

}  // namespace

std::string serialize_scenario(const Scenario& s)
{
    std::ostringstream out;
    out << "name = " << quote(s.name) << "\n";
    out << "kind = " << quote(s.kind) << "\n";
    out << "seed = " << s.seed << "\n";

    const auto& ic = s.integrator;
    out << "\n[integrator]\n";
    out << "abs_tol = " << render(Value::of(ic.abs_tol)) << "\n";
    out << "initial_step = " << render(Value::of(ic.initial_step)) << "\n";
    out << "max_step = " << render(Value::of(ic.max_step)) << "\n";
    out << "max_steps = " << ic.max_steps << "\n";
    out << "rel_tol = " << render(Value::of(ic.rel_tol)) << "\n";

    out << "\n[output]\n";
    out << "csv = " << (s.output.csv ? "true" : "false") << "\n";
    out << "json = " << (s.output.json ? "true" : "false") << "\n";

    out << "\n[" << s.kind << "]\n";
    for (const auto& [key, value] : s.params)
        out << key << " = " << render(value) << "\n";
    return out.str();
}

}  // namespace negmass::scenario
