#include "bsdomino/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsdomino/balrep.hpp"
#include "bsdomino/group.hpp"
#include "bsdomino/pam.hpp"
#include "bsdomino/sampling.hpp"
#include "bsdomino/tileset.hpp"
#include "bsdomino/tiling.hpp"

namespace bsdomino::cli {

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

BsParams parse_mn(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw InputError("--mn expects 'm,n', got '" + text + "'");
    try {
        std::size_t used1 = 0, used2 = 0;
        const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
        long m = std::stol(a, &used1), n = std::stol(b, &used2);
        if (used1 != a.size() || used2 != b.size()) throw std::invalid_argument("trailing characters");
        return BsParams(m, n);
    } catch (const std::exception& e) {
        throw InputError("--mn '" + text + "': " + e.what());
    }
}

RatVec2 parse_point(const std::string& text) {
    try {
        return RatVec2::parse(text);
    } catch (const std::exception& e) {
        throw InputError(std::string("--x: ") + e.what());
    }
}

struct RunConfig {
    std::string mn;
    std::string map_path;
    std::string tileset_path;
    std::string word;
    std::string out_path;
    std::string x;
    std::string g0;
    long radius = 2;
    std::size_t horizon = 32;
    std::uint64_t budget = 1'000'000;
    std::uint64_t seed = 1;
    std::size_t samples = 1000;
    long k_from = 0;
    long k_to = 9;
    long piece = -1;
};

MapSpec load_map(const RunConfig& cfg) {
    MapSpec spec = [&] {
        try {
            return load_map_spec(cfg.map_path);
        } catch (const InvalidMap& e) {
            throw InputError("invalid map '" + cfg.map_path + "': " + e.what());
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        } catch (const nlohmann::json::exception& e) {
            throw InputError("map spec '" + cfg.map_path + "': " + e.what());
        }
    }();
    if (!cfg.mn.empty()) spec.params = parse_mn(cfg.mn);
    return spec;
}

// Writes to --out when given, otherwise to the result stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw InputError("cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : fallback_; }
    bool to_file() const { return file_ != nullptr; }

private:
    std::ostream& fallback_;
    std::unique_ptr<std::ofstream> file_;
};

int cmd_phi(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.mn.empty()) throw InputError("phi needs --mn m,n");
    const BsParams p = parse_mn(cfg.mn);
    GroupWord w;
    try {
        w = GroupWord::parse(cfg.word);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kInputError;
    }
    out << phi(p, w).str() << "\n";
    return kOk;
}

int cmd_compile(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const MapSpec spec = load_map(cfg);
    const Tileset ts = enumerate_tileset(spec.params, spec.map, EnumerationOptions::from_env());
    Sink sink(cfg.out_path, out);
    write_tileset(sink.stream(), ts);
    if (sink.to_file())
        out << "m=" << spec.params.m << " n=" << spec.params.n << " pieces=" << spec.map.size()
            << " tiles=" << ts.tiles.size() << "\n";
    return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    std::ifstream in(cfg.tileset_path);
    if (!in) throw InputError("cannot open tileset '" + cfg.tileset_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    Tileset ts = [&] {
        try {
            return parse_tileset(buf.str());
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }();
    const auto bad = verify_tileset(ts);
    for (auto k : bad) out << "FAIL tile " << k << ": " << ts.tiles[k].str() << "\n";
    out << (bad.empty() ? "ok" : "failed") << " tiles=" << ts.tiles.size() << " bad=" << bad.size() << "\n";
    return bad.empty() ? kOk : kFailed;
}

int cmd_orbit(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const MapSpec spec = load_map(cfg);
    const RatVec2 x = parse_point(cfg.x);
    OrbitReport rep;
    try {
        rep = orbit(spec.map, x, cfg.horizon);
    } catch (const OutsideDomain& e) {
        throw InputError(e.what());
    }
    for (std::size_t k = 0; k < rep.states.size(); ++k)
        out << k << " piece=" << rep.states[k].piece << " x=" << rep.states[k].point.str() << "\n";
    out << rep.summary() << "\n";
    return kOk;
}

int cmd_simulate_row(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const MapSpec spec = load_map(cfg);
    const BsParams& p = spec.params;
    const RatVec2 x = parse_point(cfg.x);
    std::size_t piece = 0;
    if (cfg.piece >= 0) {
        piece = static_cast<std::size_t>(cfg.piece);
        if (piece >= spec.map.size()) throw InputError("--piece out of range");
    } else {
        auto located = spec.map.locate_piece(x);
        if (!located) throw InputError("point (" + x.str() + ") is outside the domain");
        piece = *located;
    }
    GroupElement g0;
    try {
        g0 = britton_reduce(p, GroupWord::parse(cfg.g0));
    } catch (const ParseError& e) {
        throw InputError(std::string("--g0: ") + e.what());
    }
    if (cfg.k_from > cfg.k_to) throw InputError("--from must not exceed --to");

    std::vector<Tile> row;
    try {
        row = simulate_row(p, spec.map, piece, x, g0, cfg.k_from, cfg.k_to);
    } catch (const OutsidePiece& e) {
        throw InputError(e.what());
    }
    for (const auto& t : row) out << t.str() << "\n";

    const Rat lam = g0.lambda(p);
    const auto bottoms = window(x, Rat(p.n) * lam, p.n * cfg.k_from + 1, p.n * cfg.k_to + p.n).values;
    const auto tops = window(spec.map.piece(piece).apply(x), Rat(p.m) * lam, p.m * cfg.k_from + 1,
                             p.m * cfg.k_to + p.m).values;
    std::vector<IntVec2> read_bottom, read_top;
    for (const auto& t : row) {
        read_bottom.insert(read_bottom.end(), t.bottom.begin(), t.bottom.end());
        read_top.insert(read_top.end(), t.top.begin(), t.top.end());
    }
    const bool ok = read_bottom == bottoms && read_top == tops;
    out << "tiles=" << row.size() << " bottom-window=" << (read_bottom == bottoms ? "match" : "mismatch")
        << " top-window=" << (read_top == tops ? "match" : "mismatch") << "\n";
    return ok ? kOk : kFailed;
}

struct SearchRun {
    MapSpec spec;
    Tileset tileset;
    Patch patch;
    SearchResult result;
};

SearchRun run_search(const RunConfig& cfg) {
    if (cfg.radius < 0) throw InputError("--radius must be >= 0");
    MapSpec spec = load_map(cfg);
    Tileset ts = enumerate_tileset(spec.params, spec.map, EnumerationOptions::from_env());
    Patch patch = build_ball_patch(spec.params, cfg.radius);
    SearchResult res = search_patch(ts, patch, cfg.budget);
    return {std::move(spec), std::move(ts), std::move(patch), std::move(res)};
}

int status_code(SearchResult::Status s) {
    switch (s) {
        case SearchResult::Status::Found: return kOk;
        case SearchResult::Status::ExhaustedNoTiling: return kFailed;
        case SearchResult::Status::BudgetExceeded: return kBudgetExceeded;
    }
    return kFailed;
}

void print_search_summary(std::ostream& out, const SearchRun& r) {
    out << "status=" << status_name(r.result.status) << " cells=" << r.patch.size()
        << " tiles=" << r.tileset.tiles.size() << " nodes=" << r.result.nodes << "\n";
}

int cmd_search(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const SearchRun r = run_search(cfg);
    print_search_summary(out, r);
    if (r.result.status == SearchResult::Status::Found && !cfg.out_path.empty()) {
        Sink sink(cfg.out_path, out);
        write_tiling(sink.stream(), r.patch, r.result.tile_ids);
    }
    return status_code(r.result.status);
}

int cmd_export_dot(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const SearchRun r = run_search(cfg);
    Sink sink(cfg.out_path, out);
    const bool found = r.result.status == SearchResult::Status::Found;
    write_dot(sink.stream(), r.patch, constraints_for(r.patch), found ? &r.result.tile_ids : nullptr);
    if (sink.to_file()) print_search_summary(out, r);
    else print_search_summary(err, r);
    return status_code(r.result.status);
}

int cmd_export_tiling(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const SearchRun r = run_search(cfg);
    if (r.result.status != SearchResult::Status::Found) {
        print_search_summary(err, r);
        return status_code(r.result.status);
    }
    Sink sink(cfg.out_path, out);
    write_tiling(sink.stream(), r.patch, r.result.tile_ids);
    if (sink.to_file()) print_search_summary(out, r);
    return kOk;
}

// Seeded randomized identity checks on words and witness tiles.
int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const MapSpec spec = load_map(cfg);
    const BsParams& p = spec.params;
    Rng rng(cfg.seed);
    std::size_t relator_fail = 0, compose_fail = 0, computes_fail = 0, stitch_fail = 0;
    std::uniform_int_distribution<std::size_t> len(0, 16);
    std::uniform_int_distribution<std::size_t> pick_piece(0, spec.map.size() - 1);
    for (std::size_t s = 0; s < cfg.samples; ++s) {
        const GroupWord w = random_word(rng, len(rng));
        if (phi(p, insert_relator(p, w, rng)) != phi(p, w)) ++relator_fail;
        if (!compose_alpha_check(p, w, random_word(rng, len(rng)))) ++compose_fail;

        const std::size_t i = pick_piece(rng);
        const AffinePiece& piece = spec.map.piece(i);
        const RatVec2 x = random_point(rng, piece);
        const GroupElement g = britton_reduce(p, w);
        const Tile tile = witness_tile(p, piece, g, x, i);
        if (!verify_tile_computes(p, piece, tile)) ++computes_fail;
        const GroupElement gam = multiply(p, g, a_power(p, Int(p.m)));
        if (witness_tile(p, piece, gam, x, i).left != tile.right) ++stitch_fail;
    }
    const bool ok = relator_fail + compose_fail + computes_fail + stitch_fail == 0;
    out << "samples=" << cfg.samples << " seed=" << cfg.seed << " relator_fail=" << relator_fail
        << " compose_fail=" << compose_fail << " computes_fail=" << computes_fail
        << " stitch_fail=" << stitch_fail << " " << (ok ? "ok" : "failed") << "\n";
    return ok ? kOk : kFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Wang tilesets on Baumslag-Solitar groups computing rational piecewise affine maps"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_mn = [&](CLI::App* sub) { sub->add_option("--mn", cfg.mn, "group parameters m,n"); };
    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out_path, "output path"); };
    auto add_search = [&](CLI::App* sub) {
        sub->add_option("map", cfg.map_path, "map spec (JSON)")->required();
        add_mn(sub);
        sub->add_option("--radius", cfg.radius, "ball radius (normal-form length)");
        sub->add_option("--budget", cfg.budget, "maximum tile assignments tried");
        add_out(sub);
    };

    auto* phi_cmd = app.add_subcommand("phi", "print Phi(w) = (alpha, beta)");
    phi_cmd->add_option("word", cfg.word, "word, e.g. \"taT a2 t A T A-2\"");
    add_mn(phi_cmd);

    auto* compile_cmd = app.add_subcommand("compile", "enumerate the tileset of a map");
    compile_cmd->add_option("map", cfg.map_path, "map spec (JSON)")->required();
    add_mn(compile_cmd);
    add_out(compile_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "check that every tile computes its piece");
    verify_cmd->add_option("tileset", cfg.tileset_path, "tileset file")->required();

    auto* orbit_cmd = app.add_subcommand("orbit", "iterate the map from a point");
    orbit_cmd->add_option("map", cfg.map_path, "map spec (JSON)")->required();
    orbit_cmd->add_option("--x", cfg.x, "start point p/q,p/q")->required();
    orbit_cmd->add_option("--horizon", cfg.horizon, "maximum number of images");
    add_mn(orbit_cmd);

    auto* row_cmd = app.add_subcommand("simulate-row", "tiles along g0 a^(mk) for a point");
    row_cmd->add_option("map", cfg.map_path, "map spec (JSON)")->required();
    row_cmd->add_option("--x", cfg.x, "point p/q,p/q")->required();
    row_cmd->add_option("--piece", cfg.piece, "piece index (default: the piece owning x)");
    row_cmd->add_option("--g0", cfg.g0, "base word of the row");
    row_cmd->add_option("--from", cfg.k_from, "first k");
    row_cmd->add_option("--to", cfg.k_to, "last k");
    add_mn(row_cmd);

    auto* search_cmd = app.add_subcommand("search", "search a tiling of a ball patch");
    add_search(search_cmd);
    auto* dot_cmd = app.add_subcommand("export-dot", "search, then emit the patch as DOT");
    add_search(dot_cmd);
    auto* tiling_cmd = app.add_subcommand("export-tiling", "search, then emit 'cell -> tile-id' lines");
    add_search(tiling_cmd);

    auto* check_cmd = app.add_subcommand("check", "seeded randomized identity checks");
    check_cmd->add_option("map", cfg.map_path, "map spec (JSON)")->required();
    check_cmd->add_option("--seed", cfg.seed, "random seed");
    check_cmd->add_option("--samples", cfg.samples, "number of samples");
    add_mn(check_cmd);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*phi_cmd) return cmd_phi(cfg, out, err);
        if (*compile_cmd) return cmd_compile(cfg, out, err);
        if (*verify_cmd) return cmd_verify(cfg, out, err);
        if (*orbit_cmd) return cmd_orbit(cfg, out, err);
        if (*row_cmd) return cmd_simulate_row(cfg, out, err);
        if (*search_cmd) return cmd_search(cfg, out, err);
        if (*dot_cmd) return cmd_export_dot(cfg, out, err);
        if (*tiling_cmd) return cmd_export_tiling(cfg, out, err);
        if (*check_cmd) return cmd_check(cfg, out, err);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const EnumerationTooLarge& e) {
        err << "error: " << e.what() << " (raise BSDOMINO_MAX_TILES)\n";
        return kBudgetExceeded;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace bsdomino::cli
