// memalg command-line tool.

#include <memalg/cardinal.hpp>
#include <memalg/certificate.hpp>
#include <memalg/error.hpp>
#include <memalg/isomorphism.hpp>
#include <memalg/machine_io.hpp>
#include <memalg/models.hpp>
#include <memalg/reductions.hpp>
#include <memalg/universality.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>

using namespace memalg;

namespace {

enum class Exit { Ok = 0, Negative = 1, Error = 2 };

struct Common {
    std::string format = "text";
    std::string expect;
    std::uint64_t node_cap = default_search_node_cap;
    std::uint64_t subset_cap = default_subset_cap;
    std::uint64_t cap = default_enumeration_cap;

    SearchLimits limits() const { return {node_cap, subset_cap}; }
    bool certificate() const { return format == "certificate"; }
};

void add_format(CLI::App * cmd, Common & o)
{
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "certificate"}))->capture_default_str();
}

void add_expect(CLI::App * cmd, Common & o)
{
    cmd->add_option("--expect", o.expect, "Exit 1 when the answer differs")->check(CLI::IsMember({"yes", "no"}));
}

void add_search_caps(CLI::App * cmd, Common & o)
{
    cmd->add_option("--node-cap", o.node_cap, "Backtracking nodes per isomorphism search")->capture_default_str();
    cmd->add_option("--subset-cap", o.subset_cap, "State subsets tried by the completeness search")->capture_default_str();
}

void add_enum_cap(CLI::App * cmd, Common & o)
{
    cmd->add_option("--cap", o.cap, "Largest state count to enumerate")->capture_default_str();
}

Exit answer(const Common & o, bool yes)
{
    if (o.expect.empty())
        return Exit::Ok;
    return (o.expect == "yes") == yes ? Exit::Ok : Exit::Negative;
}

// Deterministic commands: the certificate holds the inputs and the output.
Exit emit_replay(const Common & o, Certificate c)
{
    auto output = replay(c);
    if (o.certificate()) {
        c.add_block("output", output);
        std::cout << format_certificate(c);
    }
    else
        std::cout << output;
    return Exit::Ok;
}

std::string first_keyword(const std::string & text)
{
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::istringstream words(line.substr(0, line.find('#')));
        std::string w;
        if (words >> w)
            return w;
    }
    return {};
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Transition-system algebra for machine models: cardinalities, reductions, isomorphism and completeness"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    Common o;
    std::optional<Exit> result;
    auto run = [&](auto && body) { return [&, body] { result = body(); }; };

    // card
    std::string card_what;
    std::optional<std::uint64_t> card_k, card_m, card_n;
    auto * card = app.add_subcommand("card", "State and transition-space cardinality of a template, or evaluate an expression");
    card->add_option("what", card_what, "finite-turing, infinite-tape-turing, umm, lsm, quantum, or an expression such as '2^beth(0)'")->required();
    card->add_option("--k", card_k, "Registers");
    card->add_option("--m", card_m, "Symbols");
    card->add_option("--n", card_n, "Cells");
    add_format(card, o);
    card->callback(run([&] {
        Certificate c{"card", {}, {}};
        static const std::vector<std::string> templates{"finite-turing", "infinite-tape-turing", "umm", "lsm", "quantum"};
        if (std::find(templates.begin(), templates.end(), card_what) != templates.end()) {
            c.add("template", card_what);
            for (auto [key, v] : {std::pair{"k", card_k}, std::pair{"m", card_m}, std::pair{"n", card_n}})
                if (v)
                    c.add(key, std::to_string(*v));
        }
        else
            c.add("expression", card_what);
        return emit_replay(o, std::move(c));
    }));

    // universality
    UniversalityParams up;
    auto * uni = app.add_subcommand("universality", "Cardinality table and completeness verdicts against the universal memcomputing machine");
    uni->add_option("--tm-registers", up.tm_registers)->capture_default_str();
    uni->add_option("--tm-symbols", up.tm_symbols)->capture_default_str();
    uni->add_option("--tm-cells", up.tm_cells)->capture_default_str();
    uni->add_option("--umm-cells", up.umm_cells)->capture_default_str();
    uni->add_option("--lsm-cells", up.lsm_cells)->capture_default_str();
    uni->add_option("--qudit-levels", up.qudit_levels)->capture_default_str();
    uni->add_option("--qudits", up.qudits)->capture_default_str();
    add_format(uni, o);
    add_expect(uni, o);
    uni->callback(run([&] {
        Certificate c{"universality", {}, {}};
        c.add("tm-registers", std::to_string(up.tm_registers));
        c.add("tm-symbols", std::to_string(up.tm_symbols));
        c.add("tm-cells", std::to_string(up.tm_cells));
        c.add("umm-cells", std::to_string(up.umm_cells));
        c.add("lsm-cells", std::to_string(up.lsm_cells));
        c.add("qudit-levels", std::to_string(up.qudit_levels));
        c.add("qudits", std::to_string(up.qudits));
        emit_replay(o, std::move(c));
        auto report = universality_report(up);
        bool all = std::all_of(report.verdicts.begin(), report.verdicts.end(), [](auto & v) { return v.complete(); });
        return answer(o, all);
    }));

    // iso / complete / submachine
    std::string file_a, file_b, path = "auto";
    auto * iso = app.add_subcommand("iso", "Find an isomorphism between two machines");
    auto * complete = app.add_subcommand("complete", "Decide whether machine A has a sub-machine isomorphic to B");
    auto * sub = app.add_subcommand("submachine", "Decide whether B is literally a reduction of A");
    for (auto * cmd : {iso, complete, sub}) {
        cmd->add_option("a", file_a, "Machine file")->required()->check(CLI::ExistingFile);
        cmd->add_option("b", file_b, "Machine file")->required()->check(CLI::ExistingFile);
        add_format(cmd, o);
        add_expect(cmd, o);
    }
    add_search_caps(iso, o);
    add_search_caps(complete, o);
    complete->add_option("--path", path, "auto, construct or search")->check(CLI::IsMember({"auto", "construct", "search"}))->capture_default_str();

    auto emit_decision = [&](const Certificate & c, std::string_view yes, std::string_view no) {
        bool found = c.require("result") == "yes";
        if (o.certificate())
            std::cout << format_certificate(c);
        else
            std::cout << (found ? yes : no) << '\n' << format_witness(c);
        return answer(o, found);
    };
    iso->callback(run([&] {
        auto a = read_machine_file(file_a);
        auto b = read_machine_file(file_b);
        return emit_decision(iso_certificate(a, b, find_isomorphism(a, b, o.limits())), "isomorphic", "not isomorphic");
    }));
    complete->callback(run([&] {
        auto a = read_machine_file(file_a);
        auto b = read_machine_file(file_b);
        auto p = path == "construct" ? CompletenessPath::Construct : path == "search" ? CompletenessPath::Search : CompletenessPath::Automatic;
        return emit_decision(complete_certificate(a, b, is_complete(a, b, o.limits(), p)), "complete", "not complete");
    }));
    sub->callback(run([&] {
        auto a = read_machine_file(file_a);
        auto b = read_machine_file(file_b);
        return emit_decision(submachine_certificate(a, b, is_sub_machine(a, b)), "sub-machine", "none");
    }));

    // reduce
    std::string reduce_file, keep_fns, keep_states;
    auto * reduce = app.add_subcommand("reduce", "Functional or state reduction of a machine");
    reduce->add_option("machine", reduce_file, "Machine file")->required()->check(CLI::ExistingFile);
    auto * kf = reduce->add_option("--keep-fns", keep_fns, "Comma-separated function names to keep");
    auto * ks = reduce->add_option("--keep-states", keep_states, "Comma-separated state labels to keep");
    kf->excludes(ks);
    add_format(reduce, o);
    reduce->callback(run([&] {
        if (keep_fns.empty() == keep_states.empty())
            throw Error(ErrorKind::InvalidArgument, "reduce needs exactly one of --keep-fns and --keep-states");
        Certificate c{"reduce", {}, {}};
        if (! keep_fns.empty())
            c.add("keep-fns", keep_fns);
        else
            c.add("keep-states", keep_states);
        c.add_block("source", format_machine(read_machine_file(reduce_file)));
        return emit_replay(o, std::move(c));
    }));

    // compile-tm / compile-mem / tm2mem
    std::string program_file;
    auto * ctm = app.add_subcommand("compile-tm", "Compile a bounded-tape Turing machine into a one-function machine");
    auto * cmem = app.add_subcommand("compile-mem", "Compile a memprogram into a machine over aggregate states");
    auto * t2m = app.add_subcommand("tm2mem", "Translate a Turing machine into a memprogram with memtape, memregister and memaddress cells");
    for (auto * cmd : {ctm, cmem, t2m}) {
        cmd->add_option("program", program_file, "Program file")->required()->check(CLI::ExistingFile);
        add_format(cmd, o);
    }
    add_enum_cap(ctm, o);
    add_enum_cap(cmem, o);
    auto program_certificate = [&](std::string kind, std::string block) {
        Certificate c{std::move(kind), {}, {}};
        if (c.kind != "tm2mem")
            c.add("cap", std::to_string(o.cap));
        c.add_block(std::move(block), read_text_file(program_file));
        return c;
    };
    ctm->callback(run([&] { return emit_replay(o, program_certificate("compile-tm", "tm")); }));
    cmem->callback(run([&] { return emit_replay(o, program_certificate("compile-mem", "mem")); }));
    t2m->callback(run([&] { return emit_replay(o, program_certificate("tm2mem", "tm")); }));

    // lockstep
    std::string lock_tm, lock_mem;
    std::size_t lock_steps = 100;
    auto * lock = app.add_subcommand("lockstep", "Run a TM and its memprogram side by side and compare every step");
    lock->add_option("--tm", lock_tm, "Turing machine file")->required()->check(CLI::ExistingFile);
    lock->add_option("--mem", lock_mem, "Memprogram file (default: the tm2mem translation)")->check(CLI::ExistingFile);
    lock->add_option("--steps", lock_steps, "Step budget")->capture_default_str();
    add_format(lock, o);
    add_expect(lock, o);
    lock->callback(run([&] {
        Certificate c{"lockstep", {}, {}};
        c.add("steps", std::to_string(lock_steps));
        c.add_block("tm", read_text_file(lock_tm));
        if (! lock_mem.empty())
            c.add_block("mem", read_text_file(lock_mem));
        auto t = parse_turing(c.require_block("tm"));
        auto p = lock_mem.empty() ? tm_to_mem(t) : parse_mem(*c.block("mem"));
        bool agrees = ! verify_lockstep(t, p, lock_steps).divergence;
        emit_replay(o, std::move(c));
        return answer(o, agrees);
    }));

    // sim
    std::string sim_file;
    std::size_t sim_steps = 1000;
    auto * sim = app.add_subcommand("sim", "Interpret a Turing machine or memprogram directly and print the trace");
    sim->add_option("program", sim_file, "Turing machine or memprogram file")->required()->check(CLI::ExistingFile);
    sim->add_option("--steps", sim_steps, "Step budget")->capture_default_str();
    add_format(sim, o);
    sim->callback(run([&] {
        Certificate c{"sim", {}, {}};
        auto text = read_text_file(sim_file);
        auto kind = first_keyword(text);
        if (kind != "tm" && kind != "mem")
            throw Error(ErrorKind::InvalidArgument, "'" + sim_file + "' is neither a 'tm' nor a 'mem' description");
        c.add("program", kind);
        c.add("steps", std::to_string(sim_steps));
        c.add_block(kind, text);
        return emit_replay(o, std::move(c));
    }));

    // verify
    std::string cert_file;
    auto * verify = app.add_subcommand("verify", "Check a certificate without repeating the search");
    verify->add_option("certificate", cert_file, "Certificate file")->required()->check(CLI::ExistingFile);
    add_search_caps(verify, o);
    verify->callback(run([&] {
        auto c = parse_certificate(read_text_file(cert_file));
        auto v = verify_certificate(c, o.limits());
        std::cout << (v.valid ? "valid" : "invalid") << " (" << c.kind << ", " << v.method << "): " << v.detail << '\n';
        return v.valid ? Exit::Ok : Exit::Negative;
    }));

    // check-lemmas
    std::uint64_t seed = 1;
    std::size_t iters = 1000, max_states = 4, max_functions = 6;
    auto * lemmas = app.add_subcommand("check-lemmas", "Randomised check of the reduction composition and commutation laws");
    lemmas->add_option("--seed", seed)->capture_default_str();
    lemmas->add_option("--iters", iters, "Checks per law")->capture_default_str();
    lemmas->add_option("--max-states", max_states)->capture_default_str();
    lemmas->add_option("--max-functions", max_functions)->capture_default_str();
    add_format(lemmas, o);
    lemmas->callback(run([&] {
        Certificate c{"check-lemmas", {}, {}};
        c.add("seed", std::to_string(seed));
        c.add("iters", std::to_string(iters));
        c.add("max-states", std::to_string(max_states));
        c.add("max-functions", std::to_string(max_functions));
        auto output = replay(c);
        if (o.certificate()) {
            c.add_block("output", output);
            std::cout << format_certificate(c);
        }
        else
            std::cout << output;
        return output.ends_with("all laws hold\n") ? Exit::Ok : Exit::Negative;
    }));

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return static_cast<int>(Exit::Error);
    }
    catch (const Error & e) {
        std::cout.flush();
        if (e.kind() == ErrorKind::SearchBudgetExceeded || e.kind() == ErrorKind::EnumerationTooLarge)
            std::cerr << "inconclusive: " << e.what() << '\n';
        else
            std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(Exit::Error);
    }
    return static_cast<int>(result.value_or(Exit::Error));
}
