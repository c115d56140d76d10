#include "attractor/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "attractor/access.hpp"
#include "attractor/approx.hpp"
#include "attractor/compress.hpp"
#include "attractor/gadget.hpp"
#include "attractor/induce.hpp"
#include "attractor/reduce.hpp"
#include "attractor/validate.hpp"

using nlohmann::json;

namespace attractor {

namespace {

struct LoadedText {
  Text text;
  std::vector<uint8_t> byte_of_symbol;  // empty in token mode
};

LoadedText load_text(const std::string& path, bool tokens) {
  if (tokens) return {read_token_text(path), {}};
  ByteText bt = read_byte_text(path);
  return {std::move(bt.text), std::move(bt.byte_of_symbol)};
}

uint64_t parse_k(const std::string& k, uint64_t n) {
  if (k == "full") return n;
  uint64_t v = std::stoull(k);
  if (v < 1 || v > n) throw std::invalid_argument("k out of [1..n]");
  return v;
}

// Attractors induced from the run-length BWT live on the sentinel-extended
// text; when an attractor file declares one extra position, extend the text
// the same way so the pipelines compose.
void align_to_attractor(Text& text, const Attractor& gamma) {
  if (gamma.n == text.n() + 1 && !text.has_sentinel) text = text.with_sentinel();
}

void emit_attractor(const std::string& out_path, const Attractor& gamma, std::ostream& out) {
  if (out_path.empty()) {
    out << "# n=" << gamma.n << " k=" << gamma.k << "\n";
    for (Pos p : gamma.positions) out << p << "\n";
  } else {
    write_attractor(out_path, gamma);
  }
}

void write_sidecar_symbols(const std::string& index_path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(index_path + ".sym");
  if (!out) throw std::runtime_error("cannot write symbol sidecar");
  for (size_t s = 1; s < bytes.size(); s++) out << s << " " << static_cast<unsigned>(bytes[s]) << "\n";
}

std::vector<uint8_t> read_sidecar_symbols(const std::string& index_path) {
  std::ifstream in(index_path + ".sym");
  std::vector<uint8_t> bytes(1, 0);
  if (!in) return {};
  uint64_t code;
  unsigned value;
  while (in >> code >> value) {
    if (code != bytes.size()) return {};
    bytes.push_back(static_cast<uint8_t>(value));
  }
  return bytes;
}

std::vector<uint32_t> parse_id_list(const std::string& csv) {
  std::vector<uint32_t> out;
  std::istringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(static_cast<uint32_t>(std::stoul(item)));
  }
  return out;
}

struct Options {
  std::string text_path, attractor_path, out_path, in_path, instance_path, symtab_path;
  std::string k = "full", cover;
  bool tokens = false;
  uint32_t tau = 2, width = 64;
  uint64_t pos = 0, len = 0, rand_n = 0, seed = 0;
  uint32_t sigma = 2;
  uint32_t gadget_k = 3;
  bool random = false;
};

int run_stats(const Options& opt, std::ostream& out) {
  Text text;
  if (opt.random) {
    if (opt.rand_n == 0) throw std::invalid_argument("--random needs --n");
    text = random_text(opt.rand_n, opt.sigma, opt.seed);
  } else {
    text = load_text(opt.text_path, opt.tokens).text;
  }
  uint64_t n = text.n();
  out << json{{"measure", "text"}, {"n", n}, {"sigma", text.sigma}} << "\n";

  SuffixIndex idx = build_suffix_index(text);
  Lz77Parse parse = lz77_parse(text, &idx);
  Attractor glz = attractor_from_lz77(parse);
  out << json{{"measure", "lz77"}, {"z", parse.z()}, {"gamma", glz.size()}} << "\n";

  if (!text.has_sentinel) {
    Text ts = text.with_sentinel();
    SuffixIndex sidx = build_suffix_index(ts);
    Rlbwt runs = rlbwt_build(ts, &sidx);
    out << json{{"measure", "rlbwt"}, {"r", runs.r()}, {"gamma", attractor_from_rlbwt(ts, &sidx).size()}}
        << "\n";
  }

  MacroScheme ms = macro_from_lz77(parse);
  out << json{{"measure", "macro"}, {"b", ms.b()}, {"gamma", attractor_from_macro(ms).size()}} << "\n";

  BidirectionalParse bp = bidirectional_parse_from_attractor(text, glz);
  CollageSystem cs = collage_from_attractor(text, glz);
  out << json{{"measure", "collage"}, {"c", cs.c()}, {"gamma", attractor_from_collage(cs).size()}} << "\n";
  out << json{{"measure", "reduce"}, {"phrases", bp.size()}, {"height", bp.height}, {"rules", cs.c()}}
      << "\n";

  uint64_t k = parse_k(opt.k == "full" ? "full" : opt.k, n);
  if (n * k * k <= 100000000ull) {
    json approx{{"measure", "approx"}, {"k", k},
                {"greedy", k_attractor_greedy(text, k).size()},
                {"two_k", k_attractor_2k(text, k).size()},
                {"lower_bound", attractor_lower_bound(text, k)}};
    out << approx << "\n";
  }
  if (n <= 20) {
    out << json{{"measure", "min_brute"}, {"k", k}, {"gamma_star", min_attractor_brute(text, k, &idx).size()}}
        << "\n";
  }

  AttractorIndex ix = build_index(text, glz, opt.tau, opt.width);
  SpaceReport rep = space_report(ix);
  out << json{{"measure", "index"}, {"tau", opt.tau}, {"levels", ix.levels},
              {"pointer_words", rep.pointer_words}, {"explicit_symbols", rep.explicit_symbols},
              {"total_words", rep.total_words}}
      << "\n";
  return 0;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"string attractor toolkit"};
  app.require_subcommand(1);
  Options opt;
  std::function<int()> action;

  auto add_text = [&](CLI::App* cmd, bool required = true) {
    auto* o = cmd->add_option("--text", opt.text_path, "input text file (raw bytes)");
    if (required) o->required();
    cmd->add_flag("--tokens", opt.tokens, "text file holds one decimal token per line");
  };

  // parse lz77
  {
    auto* parse_cmd = app.add_subcommand("parse", "factorizations");
    parse_cmd->require_subcommand(1);
    auto* lz = parse_cmd->add_subcommand("lz77", "greedy longest-previous-factor parse");
    add_text(lz);
    lz->add_option("--out", opt.out_path, "output parse file");
    lz->callback([&] {
      action = [&] {
        Text text = load_text(opt.text_path, opt.tokens).text;
        Lz77Parse parse = lz77_parse(text);
        if (!opt.out_path.empty()) write_lz77(opt.out_path, parse);
        out << json{{"measure", "lz77"}, {"n", parse.n}, {"z", parse.z()}} << "\n";
        return 0;
      };
    });
  }

  // bwt runs
  {
    auto* bwt_cmd = app.add_subcommand("bwt", "Burrows-Wheeler transform");
    bwt_cmd->require_subcommand(1);
    auto* runs = bwt_cmd->add_subcommand("runs", "run-length encoded transform");
    add_text(runs);
    runs->add_option("--out", opt.out_path, "output run file");
    runs->callback([&] {
      action = [&] {
        Text text = load_text(opt.text_path, opt.tokens).text;
        if (!text.has_sentinel) text = text.with_sentinel();
        Rlbwt r = rlbwt_build(text);
        if (!opt.out_path.empty()) write_rlbwt(opt.out_path, r);
        out << json{{"measure", "rlbwt"}, {"n", r.n}, {"r", r.r()}} << "\n";
        return 0;
      };
    });
  }

  // induce {lz77|rlbwt|macro|collage}
  {
    auto* induce_cmd = app.add_subcommand("induce", "attractors from compressed representations");
    induce_cmd->require_subcommand(1);
    auto* lz = induce_cmd->add_subcommand("lz77", "phrase-end attractor");
    add_text(lz);
    lz->add_option("--out", opt.out_path, "output attractor file");
    lz->callback([&] {
      action = [&] {
        Text text = load_text(opt.text_path, opt.tokens).text;
        emit_attractor(opt.out_path, attractor_from_lz77(lz77_parse(text)), out);
        return 0;
      };
    });
    auto* rb = induce_cmd->add_subcommand("rlbwt", "run-start attractor");
    add_text(rb);
    rb->add_option("--out", opt.out_path, "output attractor file");
    rb->callback([&] {
      action = [&] {
        Text text = load_text(opt.text_path, opt.tokens).text;
        if (!text.has_sentinel) text = text.with_sentinel();
        emit_attractor(opt.out_path, attractor_from_rlbwt(text), out);
        return 0;
      };
    });
    auto* mc = induce_cmd->add_subcommand("macro", "destination-endpoint attractor");
    mc->add_option("--macro", opt.in_path, "macro scheme file")->required();
    mc->add_option("--out", opt.out_path, "output attractor file");
    mc->callback([&] {
      action = [&] {
        emit_attractor(opt.out_path, attractor_from_macro(read_macro(opt.in_path)), out);
        return 0;
      };
    });
    auto* cl = induce_cmd->add_subcommand("collage", "rule insertion-point attractor");
    cl->add_option("--collage", opt.in_path, "collage system file")->required();
    cl->add_option("--out", opt.out_path, "output attractor file");
    cl->callback([&] {
      action = [&] {
        emit_attractor(opt.out_path, attractor_from_collage(read_collage(opt.in_path)), out);
        return 0;
      };
    });
  }

  // validate
  {
    auto* val = app.add_subcommand("validate", "check a k-attractor claim");
    add_text(val);
    val->add_option("--attractor", opt.attractor_path, "attractor file")->required();
    val->add_option("--k", opt.k, "coverage length, or 'full'");
    val->callback([&] {
      action = [&] {
        Text text = load_text(opt.text_path, opt.tokens).text;
        Attractor gamma = read_attractor(opt.attractor_path, text.n());
        align_to_attractor(text, gamma);
        uint64_t k = parse_k(opt.k, text.n());
        ValidationResult res = validate_k_attractor(text, gamma, k);
        if (res.valid) {
          out << json{{"measure", "validate"}, {"k", k}, {"valid", true}} << "\n";
          return 0;
        }
        err << "invalid: uncovered substring at pos=" << res.witness->pos
            << " len=" << res.witness->len << "\n";
        return 1;
      };
    });
  }

  // approx {greedy|2k|lower-bound}
  {
    auto* ap = app.add_subcommand("approx", "polynomial-time approximations");
    ap->require_subcommand(1);
    auto* gr = ap->add_subcommand("greedy", "set-cover greedy attractor");
    add_text(gr);
    gr->add_option("--k", opt.k, "coverage length, or 'full'");
    gr->add_option("--out", opt.out_path, "output attractor file");
    gr->callback([&] {
      action = [&] {
        Text text = load_text(opt.text_path, opt.tokens).text;
        emit_attractor(opt.out_path, k_attractor_greedy(text, parse_k(opt.k, text.n())), out);
        return 0;
      };
    });
    auto* tk = ap->add_subcommand("2k", "leftmost-occurrence attractor over the doubled text");
    add_text(tk);
    tk->add_option("--k", opt.k, "coverage length, or 'full'");
    tk->add_option("--out", opt.out_path, "output attractor file");
    tk->callback([&] {
      action = [&] {
        Text text = load_text(opt.text_path, opt.tokens).text;
        emit_attractor(opt.out_path, k_attractor_2k(text, parse_k(opt.k, text.n())), out);
        return 0;
      };
    });
    auto* lb = ap->add_subcommand("lower-bound", "distinct-substring lower bound");
    add_text(lb);
    lb->add_option("--k", opt.k, "coverage length, or 'full'");
    lb->callback([&] {
      action = [&] {
        Text text = load_text(opt.text_path, opt.tokens).text;
        uint64_t k = parse_k(opt.k, text.n());
        out << json{{"measure", "lower_bound"}, {"k", k}, {"bound", attractor_lower_bound(text, k)}}
            << "\n";
        return 0;
      };
    });
  }

  // min-brute
  {
    auto* mb = app.add_subcommand("min-brute", "exhaustive minimum attractor (n <= 20)");
    add_text(mb);
    mb->add_option("--k", opt.k, "coverage length, or 'full'");
    mb->add_option("--out", opt.out_path, "output attractor file");
    mb->callback([&] {
      action = [&] {
        Text text = load_text(opt.text_path, opt.tokens).text;
        emit_attractor(opt.out_path, min_attractor_brute(text, parse_k(opt.k, text.n())), out);
        return 0;
      };
    });
  }

  // reduce {parse|collage}
  {
    auto* rd = app.add_subcommand("reduce", "compressed representations from attractors");
    rd->require_subcommand(1);
    auto* pr = rd->add_subcommand("parse", "bidirectional parse, emitted as a macro scheme");
    add_text(pr);
    pr->add_option("--attractor", opt.attractor_path, "attractor file")->required();
    pr->add_option("--out", opt.out_path, "output macro scheme file")->required();
    pr->callback([&] {
      action = [&] {
        Text text = load_text(opt.text_path, opt.tokens).text;
        Attractor gamma = read_attractor(opt.attractor_path, text.n());
        align_to_attractor(text, gamma);
        BidirectionalParse parse = bidirectional_parse_from_attractor(text, gamma);
        write_macro(opt.out_path, parse.to_macro());
        out << json{{"measure", "reduce_parse"}, {"phrases", parse.size()}, {"height", parse.height}}
            << "\n";
        return 0;
      };
    });
    auto* cl = rd->add_subcommand("collage", "collage system from an attractor");
    add_text(cl);
    cl->add_option("--attractor", opt.attractor_path, "attractor file")->required();
    cl->add_option("--out", opt.out_path, "output collage file")->required();
    cl->callback([&] {
      action = [&] {
        Text text = load_text(opt.text_path, opt.tokens).text;
        Attractor gamma = read_attractor(opt.attractor_path, text.n());
        align_to_attractor(text, gamma);
        CollageSystem sys = collage_from_attractor(text, gamma);
        write_collage(opt.out_path, sys);
        out << json{{"measure", "reduce_collage"}, {"rules", sys.c()}} << "\n";
        return 0;
      };
    });
  }

  // index {build|extract}
  {
    auto* ix = app.add_subcommand("index", "random-access structure");
    ix->require_subcommand(1);
    auto* bd = ix->add_subcommand("build", "build and serialize the index");
    add_text(bd);
    bd->add_option("--attractor", opt.attractor_path, "attractor file")->required();
    bd->add_option("--tau", opt.tau, "branching parameter (>= 2)");
    bd->add_option("--width", opt.width, "word width for the extraction unit");
    bd->add_option("--out", opt.out_path, "output index file")->required();
    bd->callback([&] {
      action = [&] {
        LoadedText lt = load_text(opt.text_path, opt.tokens);
        Attractor gamma = read_attractor(opt.attractor_path, lt.text.n());
        align_to_attractor(lt.text, gamma);
        AttractorIndex built = build_index(lt.text, gamma, opt.tau, opt.width);
        save_index(opt.out_path, built);
        if (!lt.byte_of_symbol.empty()) write_sidecar_symbols(opt.out_path, lt.byte_of_symbol);
        SpaceReport rep = space_report(built);
        out << json{{"measure", "index"}, {"tau", opt.tau}, {"levels", built.levels},
                    {"pointer_words", rep.pointer_words}, {"explicit_symbols", rep.explicit_symbols},
                    {"total_words", rep.total_words}}
            << "\n";
        return 0;
      };
    });
    auto* ex = ix->add_subcommand("extract", "substring extraction from a serialized index");
    ex->add_option("--in", opt.in_path, "index file")->required();
    ex->add_option("--pos", opt.pos, "1-based start position")->required();
    ex->add_option("--len", opt.len, "length")->required();
    ex->add_flag("--tokens", opt.tokens, "print decimal tokens instead of bytes");
    ex->callback([&] {
      action = [&] {
        AttractorIndex loaded = load_index(opt.in_path);
        std::vector<Symbol> sym = extract(loaded, opt.pos, opt.len);
        std::vector<uint8_t> bytes = opt.tokens ? std::vector<uint8_t>{} : read_sidecar_symbols(opt.in_path);
        if (!bytes.empty()) {
          for (Symbol s : sym) out << (s < bytes.size() ? static_cast<char>(bytes[s]) : '?');
          out << "\n";
        } else {
          for (Symbol s : sym) out << s << "\n";
        }
        return 0;
      };
    });
  }

  // gadget {build|attractor}
  {
    auto* gd = app.add_subcommand("gadget", "hardness gadget strings");
    gd->require_subcommand(1);
    auto* bd = gd->add_subcommand("build", "build the gadget text for a set-cover instance");
    bd->add_option("--instance", opt.instance_path, "set cover instance file")->required();
    bd->add_option("--k", opt.gadget_k, "gadget parameter (>= 3)");
    bd->add_option("--out", opt.out_path, "output token text file")->required();
    bd->add_option("--symtab", opt.symtab_path, "sidecar symbol table file");
    bd->callback([&] {
      action = [&] {
        GadgetString g = build_gadget(read_set_cover(opt.instance_path), opt.gadget_k);
        write_token_text(opt.out_path, g.text);
        if (!opt.symtab_path.empty()) write_symbol_table(opt.symtab_path, g);
        out << json{{"measure", "gadget"}, {"n", g.text.n()}, {"sigma", g.text.sigma},
                    {"u", g.u}, {"m", g.m}, {"t", g.t}}
            << "\n";
        return 0;
      };
    });
    auto* at = gd->add_subcommand("attractor", "structured attractor for a cover");
    at->add_option("--instance", opt.instance_path, "set cover instance file")->required();
    at->add_option("--k", opt.gadget_k, "gadget parameter (>= 3)");
    at->add_option("--cover", opt.cover, "comma-separated set ids")->required();
    at->add_option("--out", opt.out_path, "output attractor file");
    at->callback([&] {
      action = [&] {
        GadgetString g = build_gadget(read_set_cover(opt.instance_path), opt.gadget_k);
        emit_attractor(opt.out_path, cover_attractor(g, parse_id_list(opt.cover)), out);
        return 0;
      };
    });
  }

  // stats
  {
    auto* st = app.add_subcommand("stats", "machine-readable measures for a text");
    add_text(st, /*required=*/false);
    st->add_flag("--random", opt.random, "generate a random text instead of reading one");
    st->add_option("--n", opt.rand_n, "random text length");
    st->add_option("--sigma", opt.sigma, "random text alphabet size");
    st->add_option("--seed", opt.seed, "random generator seed");
    st->add_option("--k", opt.k, "k for the approximation measures");
    st->add_option("--tau", opt.tau, "tau for the index measures");
    st->callback([&] {
      action = [&] {
        if (!opt.random && opt.text_path.empty()) throw std::invalid_argument("stats needs --text or --random");
        return run_stats(opt, out);
      };
    });
  }

  std::vector<const char*> argv;
  argv.push_back("attractor");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace attractor
