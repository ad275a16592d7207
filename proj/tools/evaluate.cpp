#include "evaluate.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

#include "cgp/constants.hpp"
#include "cgp/errors.hpp"
#include "cgp/stabilize.hpp"

#ifndef CGP_TOOL_VERSION
#define CGP_TOOL_VERSION "0.0.0"
#endif

namespace cgp::cli {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

InputFile apply_overrides(InputFile in, const Settings& s) {
    if (s.level) in.level = *s.level;
    if (s.precision) in.precision = *s.precision;
    return in;
}

}  // namespace

Scalar parse_complex(const std::string& s) {
    try {
        const auto comma = s.find(',');
        std::size_t used = 0;
        if (comma == std::string::npos) {
            const double re = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return Scalar(re, 0.0);
        }
        const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
        const double re = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument(s);
        const double im = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(s);
        return Scalar(re, im);
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::ParseError, "cannot read \"" + s + "\" as a complex number (use re or re,im)");
    }
}

int Outcome::exit_code() const { return ok() ? 0 : error_exit_code(error_kind); }

Json error_json(const Outcome& o) {
    Json j = Json::object();
    j["input"] = o.input;
    j["error"] = Json{{"kind", error_kind_name(o.error_kind)},
                      {"exit_code", o.exit_code()},
                      {"message", o.error_message}};
    return j;
}

std::string cache_key(const InputFile& in, const Settings& s) {
    std::ostringstream key;
    key << dump_canonical(input_to_json(in), 0) << "|auto=" << s.auto_stabilize << "|tol=";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", s.tol);
    key << buf << "|version=" << CGP_TOOL_VERSION;
    return sha256_hex(key.str());
}

Json evaluate_input(const InputFile& in, const Settings& s, int jobs) {
    const ScalarContext ctx(in.level, in.precision, s.tol);
    const EvalOptions opts{jobs};
    SurgeryPresentation p = in.presentation;
    require_well_formed(ctx, p);
    require_consistent(ctx, p);

    std::vector<int> critical_edges;
    for (int i : check_computable(ctx, p)) critical_edges.push_back(p.surgery_components[i]);
    std::optional<AutoStabilizeResult> stab;
    if (!critical_edges.empty()) {
        if (!s.auto_stabilize) {
            std::ostringstream msg;
            msg << "critical meridian degree on surgery edge(s)";
            for (int e : critical_edges) msg << " " << e;
            msg << "; rerun with --auto-stabilize";
            throw Error(ErrorKind::NotComputable, msg.str());
        }
        stab = auto_stabilize_full(ctx, p);
        p = stab->presentation;
    }

    const InvariantConstants k = default_constants(ctx, opts);
    const CgpResult r = cgp_full(ctx, p, k, opts);

    Json out = Json::object();
    out["tool_version"] = CGP_TOOL_VERSION;
    out["level"] = in.level;
    out["precision"] = in.precision;
    out["cgp"] = scalar_to_json(r.value);
    out["abs"] = std::abs(r.value);
    out["ell"] = r.ell;
    out["sigma"] = r.sigma;
    out["signature_defect"] = p.signature_defect;
    out["pieces"] = r.pieces;
    out["computable"] = critical_edges.empty();
    out["critical_edges"] = critical_edges;
    out["auto_stabilized"] = stab.has_value();
    if (stab) {
        out["stabilization"] = Json{{"degree", scalar_to_json(stab->degree)},
                                    {"alpha", scalar_to_json(stab->alpha)},
                                    {"level", stab->site.level},
                                    {"pos", stab->site.pos}};
    }
    out["constants"] = constants_to_json(r.constants);
    out["warnings"] = r.warnings;
    return out;
}

Outcome evaluate_file(const std::string& path, const Settings& s, int jobs) {
    Outcome o;
    o.input = path;
    try {
        const InputFile in = apply_overrides(parse_input(read_file(path)), s);
        fs::path cache_file;
        if (!s.cache_dir.empty()) {
            cache_file = fs::path(s.cache_dir) / (cache_key(in, s) + ".json");
            std::ifstream cached(cache_file);
            if (cached) {
                try {
                    Json doc = Json::parse(cached);
                    if (doc.value("tool_version", "") == CGP_TOOL_VERSION && doc.contains("output")) {
                        o.output = doc.at("output");
                        return o;
                    }
                } catch (const nlohmann::json::exception&) {
                    // A damaged cache entry is recomputed and overwritten.
                }
            }
        }
        o.output = evaluate_input(in, s, jobs);
        if (!cache_file.empty()) {
            fs::create_directories(cache_file.parent_path());
            const fs::path tmp = cache_file.string() + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
            {
                std::ofstream f(tmp, std::ios::binary);
                f << dump_canonical(Json{{"tool_version", CGP_TOOL_VERSION}, {"output", *o.output}}) << "\n";
            }
            fs::rename(tmp, cache_file);
        }
    } catch (const Error& e) {
        o.output.reset();
        o.error_kind = e.kind();
        o.error_message = e.what();
    } catch (const fs::filesystem_error& e) {
        o.output.reset();
        o.error_kind = ErrorKind::ParseError;
        o.error_message = e.what();
    }
    return o;
}

std::vector<Outcome> evaluate_batch(const std::vector<std::string>& paths, const Settings& s) {
    std::vector<Outcome> out(paths.size());
    const int workers = std::max(1, std::min<int>(s.jobs, static_cast<int>(paths.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < paths.size(); ++i) out[i] = evaluate_file(paths[i], s, s.jobs);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < paths.size(); i = next++) out[i] = evaluate_file(paths[i], s, 1);
        });
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace cgp::cli
