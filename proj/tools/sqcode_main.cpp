// Command-line front end: key/ciphertext lifecycle, attack drivers,
// distinguisher reports, and the benchmark harness.
//
// Exit codes: 0 ok, 2 parameter/IO error, 3 decryption failure,
// 4 attack failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sqcode/phase_timer.hpp"
#include "sqcode/serialize.hpp"

using namespace sqcode;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParam = 2;
constexpr int kExitDecrypt = 3;
constexpr int kExitAttack = 4;

struct CliConfig {
    std::string scheme;
    uint32_t q = 0, p = 0, m = 0;
    size_t n = 0, k = 0, r = 0, ell = 0;
    uint64_t seed = 0;
    bool seed_set = false;
    uint64_t trial_cap = 0;
    uint32_t resample_cap = 100;
    uint32_t jobs = 1;
    std::string in, out, ct_path, crack_path, msg, msg_out, preset;
    uint64_t trials = 0;
    double eta = 0.0;
};

FieldPtr field_from_config(const CliConfig& cfg) {
    if (cfg.q) return Field::make_q(cfg.q);
    if (cfg.p) return Field::make(cfg.p, cfg.m ? cfg.m : 1);
    throw ParamError("specify the field with --q or --p/--m");
}

Rng seeded_rng(const CliConfig& cfg) {
    if (!cfg.seed_set) throw ParamError("--seed is required for randomized commands");
    return Rng(cfg.seed);
}

AttackOptions attack_options(const CliConfig& cfg) {
    AttackOptions opts;
    opts.trial_cap = cfg.trial_cap;
    opts.resample_cap = cfg.resample_cap;
    opts.jobs = cfg.jobs;
    return opts;
}

VectorGF parse_message_csv(const FieldPtr& f, const std::string& csv, size_t want) {
    std::vector<Fe> vals;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        vals.push_back(f->element(std::stoull(tok)));
    }
    if (vals.size() != want)
        throw ParamError("--msg must list exactly " + std::to_string(want) + " codes");
    return VectorGF(f, std::move(vals));
}

// Accepts a bare code file or any public-key file.
LinearCode load_code_like(const std::string& path) {
    const Json j = load_json(path);
    if (j.contains("scheme")) {
        const std::string scheme = j["scheme"].get<std::string>();
        if (scheme == "wieschebrink") {
            auto [f, pk] = wieschebrink_public_from_json(j);
            return LinearCode::from_generator(pk.g_pub);
        }
        if (scheme == "bl") {
            auto [f, pk] = bl_public_from_json(j);
            return LinearCode::from_generator(pk.p);
        }
        if (scheme == "bbcrs") {
            auto [f, pk] = bbcrs_public_from_json(j);
            return LinearCode::from_generator(pk.g_pub);
        }
        throw ParamError("unknown scheme \"" + scheme + "\" in " + path);
    }
    return code_from_json(j);
}

int cmd_keygen(const CliConfig& cfg) {
    Rng rng = seeded_rng(cfg);
    FieldPtr f = field_from_config(cfg);
    if (cfg.out.empty()) throw ParamError("--out prefix is required");
    Json sk, pk;
    if (cfg.scheme == "wieschebrink") {
        auto keys = wieschebrink_keygen(f, cfg.n, cfg.k, cfg.r, rng);
        sk = wieschebrink_secret_to_json(keys.secret);
        pk = wieschebrink_public_to_json(f, keys.pub);
    } else if (cfg.scheme == "bl") {
        auto keys = bl_keygen(f, cfg.n, cfg.k, cfg.ell, rng);
        sk = bl_secret_to_json(keys.secret);
        pk = bl_public_to_json(f, keys.pub);
    } else if (cfg.scheme == "bbcrs") {
        auto keys = bbcrs_keygen(f, cfg.n, cfg.k, rng);
        sk = bbcrs_secret_to_json(keys.secret);
        pk = bbcrs_public_to_json(f, keys.pub);
    } else {
        throw ParamError("unknown --scheme \"" + cfg.scheme + "\"");
    }
    save_json(cfg.out + ".sk.json", sk);
    save_json(cfg.out + ".pk.json", pk);
    std::cout << "wrote " << cfg.out << ".sk.json and " << cfg.out << ".pk.json\n";
    return kExitOk;
}

int cmd_encrypt(const CliConfig& cfg) {
    Rng rng = seeded_rng(cfg);
    const Json j = load_json(cfg.in);
    if (cfg.out.empty()) throw ParamError("--out is required");
    Json msg_json;
    Json ct_json;
    if (cfg.scheme == "wieschebrink") {
        auto [f, pk] = wieschebrink_public_from_json(j);
        VectorGF msg = cfg.msg.empty() ? random_vector(f, pk.k, rng)
                                       : parse_message_csv(f, cfg.msg, pk.k);
        ct_json = ciphertext_to_json(wieschebrink_encrypt(pk, msg, rng));
        msg_json = Json{{"m", vector_to_json(msg)}};
    } else if (cfg.scheme == "bl") {
        auto [f, pk] = bl_public_from_json(j);
        Fe msg = cfg.msg.empty() ? f->sample(rng) : f->element(std::stoull(cfg.msg));
        ct_json = ciphertext_to_json(bl_encrypt(pk, msg, cfg.eta, rng));
        msg_json = Json{{"m", msg.code}};
    } else if (cfg.scheme == "bbcrs") {
        auto [f, pk] = bbcrs_public_from_json(j);
        VectorGF msg = cfg.msg.empty() ? random_vector(f, pk.k, rng)
                                       : parse_message_csv(f, cfg.msg, pk.k);
        ct_json = ciphertext_to_json(bbcrs_encrypt(pk, msg, rng));
        msg_json = Json{{"m", vector_to_json(msg)}};
    } else {
        throw ParamError("unknown --scheme \"" + cfg.scheme + "\"");
    }
    save_json(cfg.out, ct_json);
    if (!cfg.msg_out.empty()) save_json(cfg.msg_out, msg_json);
    std::cout << "wrote " << cfg.out << "\n";
    return kExitOk;
}

int cmd_decrypt(const CliConfig& cfg) {
    const Json j = load_json(cfg.in);
    const Json cj = load_json(cfg.ct_path);
    if (cfg.out.empty()) throw ParamError("--out is required");
    Json out;
    if (cfg.scheme == "wieschebrink") {
        auto sk = wieschebrink_secret_from_json(j);
        auto ct = ciphertext_from_json(cj, sk.spec.field());
        auto m = wieschebrink_decrypt(sk, ct);
        if (!m) {
            std::cerr << "decryption failure\n";
            return kExitDecrypt;
        }
        out = Json{{"m", vector_to_json(*m)}};
    } else if (cfg.scheme == "bl") {
        auto sk = bl_secret_from_json(j);
        auto ct = ciphertext_from_json(cj, sk.x.field());
        out = Json{{"m", bl_decrypt(sk, ct).code}};
    } else if (cfg.scheme == "bbcrs") {
        auto sk = bbcrs_secret_from_json(j);
        auto ct = ciphertext_from_json(cj, sk.spec.field());
        auto res = bbcrs_decrypt(sk, ct);
        if (!res) {
            std::cerr << "decryption failure: no gamma guess decodes\n";
            return kExitDecrypt;
        }
        out = Json{{"m", vector_to_json(res->msg)},
                   {"gamma", res->gamma.code},
                   {"gamma_tie", res->gamma_tie}};
    } else {
        throw ParamError("unknown --scheme \"" + cfg.scheme + "\"");
    }
    save_json(cfg.out, out);
    std::cout << "wrote " << cfg.out << "\n";
    return kExitOk;
}

int cmd_attack(const CliConfig& cfg) {
    Rng rng = seeded_rng(cfg);
    const Json j = load_json(cfg.in);
    if (cfg.out.empty()) throw ParamError("--out is required");
    const AttackOptions opts = attack_options(cfg);
    Json crack;
    std::string report;
    PhaseTimer wall;
    if (cfg.scheme == "wieschebrink") {
        auto [f, pk] = wieschebrink_public_from_json(j);
        auto pub = LinearCode::from_generator(pk.g_pub);
        auto res = attack_wieschebrink(pub, pk.n, pk.k, pk.r, rng, opts);
        crack = wieschebrink_crack_to_json(res.crack);
        report = res.report.summary() +
                 " positions=" + std::to_string(res.crack.random_positions.size());
    } else if (cfg.scheme == "bl") {
        auto [f, pk] = bl_public_from_json(j);
        auto pub = LinearCode::from_generator(pk.p);
        auto res = attack_bl(pub, pk.ell, rng, opts);
        crack = bl_crack_to_json(res.crack);
        report = res.report.summary() + " |L|=" + std::to_string(res.crack.L.size());
    } else if (cfg.scheme == "bbcrs") {
        auto [f, pk] = bbcrs_public_from_json(j);
        auto pub = LinearCode::from_generator(pk.g_pub);
        auto res = attack_bbcrs(pub, rng, opts);
        crack = bbcrs_crack_to_json(res.crack);
        report = res.report.summary() +
                 std::string(res.crack.dual_path ? " path=dual" : " path=primary");
    } else {
        throw ParamError("unknown --scheme \"" + cfg.scheme + "\"");
    }
    char wall_s[48];
    snprintf(wall_s, sizeof(wall_s), "%.3f", wall.elapsed());
    save_json(cfg.out, crack);
    std::cout << "attack succeeded in " << wall_s << " s: " << report << "\n"
              << "wrote " << cfg.out << "\n";
    return kExitOk;
}

int cmd_crack_decrypt(const CliConfig& cfg) {
    const Json pj = load_json(cfg.in);
    const Json kj = load_json(cfg.crack_path);
    const Json cj = load_json(cfg.ct_path);
    if (cfg.out.empty()) throw ParamError("--out is required");
    Json out;
    if (cfg.scheme == "wieschebrink") {
        auto [f, pk] = wieschebrink_public_from_json(pj);
        auto crack = wieschebrink_crack_from_json(kj);
        auto ct = ciphertext_from_json(cj, f);
        auto m = wieschebrink_crack_decrypt(crack, pk.g_pub, ct);
        if (!m) {
            std::cerr << "crack decryption failure\n";
            return kExitDecrypt;
        }
        out = Json{{"m", vector_to_json(*m)}};
    } else if (cfg.scheme == "bl") {
        auto [f, pk] = bl_public_from_json(pj);
        auto crack = bl_crack_from_json(kj);
        auto ct = ciphertext_from_json(cj, f);
        out = Json{{"m", bl_crack_decrypt(crack, pk.p, ct).code}};
    } else if (cfg.scheme == "bbcrs") {
        auto [f, pk] = bbcrs_public_from_json(pj);
        auto crack = bbcrs_crack_from_json(kj);
        auto ct = ciphertext_from_json(cj, f);
        auto m = bbcrs_crack_decrypt(crack, pk.g_pub, ct);
        if (!m) {
            std::cerr << "crack decryption failure: no alpha shift decodes\n";
            return kExitDecrypt;
        }
        out = Json{{"m", vector_to_json(*m)}};
    } else {
        throw ParamError("unknown --scheme \"" + cfg.scheme + "\"");
    }
    save_json(cfg.out, out);
    std::cout << "wrote " << cfg.out << "\n";
    return kExitOk;
}

int cmd_distinguish(const CliConfig& cfg) {
    const LinearCode code = load_code_like(cfg.in);
    const SquareDimReport rep = square_dim_report(code);
    Json out{{"k", rep.k},
             {"n", rep.n},
             {"dim_sq", rep.dim_sq},
             {"expected_grs", 2 * rep.k - 1},
             {"expected_random", std::min(rep.n, rep.k * (rep.k + 1) / 2)},
             {"grs_like", rep.grs_like}};
    if (rep.dim_dual_sq) {
        out["dim_dual_sq"] = *rep.dim_dual_sq;
        if (2 * rep.n >= 2 * rep.k + 1)
            out["expected_grs_dual"] = 2 * rep.n - 2 * rep.k - 1;
    }
    std::cout << out.dump(2) << "\n";
    if (!cfg.out.empty()) save_json(cfg.out, out);
    return kExitOk;
}

int cmd_grs_recover(const CliConfig& cfg) {
    const LinearCode code = load_code_like(cfg.in);
    if (cfg.out.empty()) throw ParamError("--out is required");
    const GrsSpec spec = grs_recover(code);  // NotGrsError maps to exit 4
    save_json(cfg.out, grs_spec_to_json(spec));
    std::cout << "recovered GRS structure: n=" << spec.length() << " k=" << spec.k
              << "\nwrote " << cfg.out << "\n";
    return kExitOk;
}

struct BenchRow {
    std::string scheme;
    uint32_t q;
    size_t n, k, r;  // r doubles as ell for bl rows
};

int cmd_bench(const CliConfig& cfg) {
    std::vector<BenchRow> rows;
    uint64_t trials = cfg.trials;
    if (cfg.preset == "table1-small") {
        rows = {{"wieschebrink", 128, 128, 79, 20}};
        if (!trials) trials = 10;
    } else if (cfg.preset == "table1-full") {
        rows = {{"wieschebrink", 128, 128, 79, 20},
                {"wieschebrink", 256, 256, 169, 39},
                {"wieschebrink", 512, 384, 245, 64},
                {"wieschebrink", 512, 512, 335, 83}};
        if (!trials) trials = 3;  // the 512-bit rows run many minutes each
    } else if (cfg.preset == "bbcrs-desk") {
        rows = {{"bbcrs", 16, 15, 6, 0}};
        if (!trials) trials = 20;
    } else if (cfg.preset == "bl-desk") {
        rows = {{"bl", 257, 200, 20, 8}};
        if (!trials) trials = 10;
    } else {
        throw ParamError("unknown --preset \"" + cfg.preset +
                         "\" (table1-small, table1-full, bbcrs-desk, bl-desk)");
    }
    Rng rng = seeded_rng(cfg);
    const AttackOptions opts = attack_options(cfg);

    std::string csv = "q,n,k,r,trials,mean_seconds,success_rate\n";
    printf("%-14s %5s %5s %5s %5s %8s %14s %14s\n", "scheme", "q", "n", "k", "r/ell",
           "trials", "mean_seconds", "success_rate");
    for (const BenchRow& row : rows) {
        FieldPtr f = Field::make_q(row.q);
        double total_secs = 0;
        uint64_t ok = 0;
        for (uint64_t t = 0; t < trials; ++t) {
            if (row.scheme == "wieschebrink") {
                auto keys = wieschebrink_keygen(f, row.n, row.k, row.r, rng);
                auto pub = LinearCode::from_generator(keys.pub.g_pub);
                PhaseTimer timer;
                try {
                    auto res = attack_wieschebrink(pub, row.n, row.k, row.r, rng, opts);
                    total_secs += timer.elapsed();
                    if (res.crack.random_positions == keys.secret.random_positions) ++ok;
                } catch (const AttackError&) {
                    total_secs += timer.elapsed();
                }
            } else if (row.scheme == "bl") {
                auto keys = bl_keygen(f, row.n, row.k, row.r, rng);
                auto pub = LinearCode::from_generator(keys.pub.p);
                PhaseTimer timer;
                try {
                    auto res = attack_bl(pub, row.r, rng, opts);
                    total_secs += timer.elapsed();
                    if (res.crack.L == keys.secret.L) ++ok;
                } catch (const AttackError&) {
                    total_secs += timer.elapsed();
                }
            } else {
                auto keys = bbcrs_keygen(f, row.n, row.k, rng);
                auto pub = LinearCode::from_generator(keys.pub.g_pub);
                PhaseTimer timer;
                try {
                    auto res = attack_bbcrs(pub, rng, opts);
                    total_secs += timer.elapsed();
                    bool agree = true;
                    for (int c = 0; c < 3 && agree; ++c) {
                        auto msg = random_vector(f, row.k, rng);
                        auto ct = bbcrs_encrypt(keys.pub, msg, rng);
                        auto dec = bbcrs_crack_decrypt(res.crack, keys.pub.g_pub, ct);
                        auto truth = bbcrs_decrypt(keys.secret, ct);
                        agree = dec && truth && *dec == truth->msg;
                    }
                    if (agree) ++ok;
                } catch (const AttackError&) {
                    total_secs += timer.elapsed();
                }
            }
        }
        const double mean = trials ? total_secs / trials : 0.0;
        const double rate = trials ? double(ok) / trials : 0.0;
        printf("%-14s %5u %5zu %5zu %5zu %8llu %14.3f %14.3f\n", row.scheme.c_str(),
               row.q, row.n, row.k, row.r, (unsigned long long)trials, mean, rate);
        char line[160];
        snprintf(line, sizeof(line), "%u,%zu,%zu,%zu,%llu,%.6f,%.4f\n", row.q, row.n,
                 row.k, row.r, (unsigned long long)trials, mean, rate);
        csv += line;
    }
    if (!cfg.out.empty()) {
        std::ofstream out(cfg.out, std::ios::trunc);
        if (!out) throw ParamError("cannot open \"" + cfg.out + "\"");
        out << csv;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"star-product cryptanalysis toolkit for GRS-based encryption schemes"};
    app.require_subcommand(1);
    CliConfig cfg;

    auto add_field_opts = [&](CLI::App* sub) {
        sub->add_option("--q", cfg.q, "field size q = p^m");
        sub->add_option("--p", cfg.p, "field characteristic");
        sub->add_option("--m", cfg.m, "extension degree");
    };
    auto add_seed = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "64-bit RNG seed")
            ->each([&](const std::string&) { cfg.seed_set = true; });
    };
    auto add_search_opts = [&](CLI::App* sub) {
        sub->add_option("--jobs", cfg.jobs, "worker threads (1 = reference mode)");
        sub->add_option("--trial-cap", cfg.trial_cap, "randomized search budget");
        sub->add_option("--resample-cap", cfg.resample_cap, "distinguisher resample cap");
    };

    CLI::App* keygen = app.add_subcommand("keygen", "generate a key pair");
    keygen->add_option("--scheme", cfg.scheme)->required();
    add_field_opts(keygen);
    keygen->add_option("--n", cfg.n)->required();
    keygen->add_option("--k", cfg.k)->required();
    keygen->add_option("--r", cfg.r);
    keygen->add_option("--ell", cfg.ell);
    add_seed(keygen);
    keygen->add_option("--out", cfg.out, "output prefix");

    CLI::App* encrypt = app.add_subcommand("encrypt", "encrypt a message");
    encrypt->add_option("--scheme", cfg.scheme)->required();
    encrypt->add_option("--in", cfg.in, "public key file")->required();
    encrypt->add_option("--msg", cfg.msg, "message codes (CSV; single code for bl)");
    encrypt->add_option("--msg-out", cfg.msg_out, "write the plaintext here");
    encrypt->add_option("--eta", cfg.eta, "bl channel error rate");
    add_seed(encrypt);
    encrypt->add_option("--out", cfg.out, "ciphertext file");

    CLI::App* decrypt = app.add_subcommand("decrypt", "decrypt with the secret key");
    decrypt->add_option("--scheme", cfg.scheme)->required();
    decrypt->add_option("--in", cfg.in, "secret key file")->required();
    decrypt->add_option("--ct", cfg.ct_path, "ciphertext file")->required();
    decrypt->add_option("--out", cfg.out, "message file");

    CLI::App* attack = app.add_subcommand("attack", "run the key-recovery attack");
    attack->add_option("--scheme", cfg.scheme)->required();
    attack->add_option("--in", cfg.in, "public key file")->required();
    add_seed(attack);
    add_search_opts(attack);
    attack->add_option("--out", cfg.out, "crack record file");

    CLI::App* crack_decrypt =
        app.add_subcommand("crack-decrypt", "decrypt with a recovered crack record");
    crack_decrypt->add_option("--scheme", cfg.scheme)->required();
    crack_decrypt->add_option("--in", cfg.in, "public key file")->required();
    crack_decrypt->add_option("--crack", cfg.crack_path, "crack record")->required();
    crack_decrypt->add_option("--ct", cfg.ct_path, "ciphertext file")->required();
    crack_decrypt->add_option("--out", cfg.out, "message file");

    CLI::App* distinguish =
        app.add_subcommand("distinguish", "square-code distinguisher report");
    distinguish->add_option("--in", cfg.in, "code or public key file")->required();
    distinguish->add_option("--out", cfg.out, "optional report file");

    CLI::App* grs_recover_cmd =
        app.add_subcommand("grs-recover", "recover (x, y) for a GRS code");
    grs_recover_cmd->add_option("--in", cfg.in, "code or public key file")->required();
    grs_recover_cmd->add_option("--out", cfg.out, "spec file");

    CLI::App* bench = app.add_subcommand("bench", "benchmark attack presets");
    bench->add_option("--preset", cfg.preset)->required();
    bench->add_option("--trials", cfg.trials, "trials per row (preset default otherwise)");
    add_seed(bench);
    add_search_opts(bench);
    bench->add_option("--out", cfg.out, "CSV output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParam;
    }

    try {
        if (keygen->parsed()) return cmd_keygen(cfg);
        if (encrypt->parsed()) return cmd_encrypt(cfg);
        if (decrypt->parsed()) return cmd_decrypt(cfg);
        if (attack->parsed()) return cmd_attack(cfg);
        if (crack_decrypt->parsed()) return cmd_crack_decrypt(cfg);
        if (distinguish->parsed()) return cmd_distinguish(cfg);
        if (grs_recover_cmd->parsed()) return cmd_grs_recover(cfg);
        if (bench->parsed()) return cmd_bench(cfg);
    } catch (const NotGrsError& e) {
        std::cerr << "error (not GRS): " << e.what() << "\n";
        return kExitAttack;
    } catch (const AttackError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAttack;
    } catch (const ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParam;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParam;
    }
    return kExitParam;
}
