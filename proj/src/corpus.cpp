// Bundled benchmark corpus: basic/target program pairs that mimic the
// reuse topologies seen in real vulnerability propagation (a demangler
// shared between a filter tool and an object dumper, a record parser
// shared between a string tool and a container tool, a magic-guarded
// image parser, a multi-path request router, and three targets where the
// reused vulnerable code cannot be reached).

#include <algorithm>
#include <array>

#include "tracefuzz/harness.hpp"

namespace tracefuzz {

namespace {

class GraphBuilder {
 public:
  explicit GraphBuilder(std::string program) : program_(std::move(program)) {}

  GraphBuilder& entry(const std::string& name) {
    graph_.entry = {program_, name};
    graph_.nodes.insert(graph_.entry);
    return *this;
  }
  GraphBuilder& node(const std::string& name) {
    graph_.nodes.insert({program_, name});
    return *this;
  }
  GraphBuilder& edge(const std::string& from, const std::string& to) {
    FunctionId a{program_, from}, b{program_, to};
    graph_.nodes.insert(a);
    graph_.nodes.insert(b);
    graph_.edges.insert({a, b});
    return *this;
  }
  CallGraph build() const { return graph_; }

 private:
  std::string program_;
  CallGraph graph_;
};

std::set<FunctionId> reused(const std::string& program,
                            std::initializer_list<const char*> names) {
  std::set<FunctionId> out;
  for (const char* n : names) out.insert({program, n});
  return out;
}

std::vector<std::uint8_t> bytes(const char* s) {
  return {reinterpret_cast<const std::uint8_t*>(s),
          reinterpret_cast<const std::uint8_t*>(s) + std::string_view(s).size()};
}

// ---------------------------------------------------------------------------
// demangle-suite: cxxfilt-style filter and objdump-style dumper sharing a
// demangler. Same input convention on both sides.

void demangle_body(RunContext& ctx) {
  ctx.call("demangle", [&] {
    const std::size_t n = ctx.input_size();
    if (n < 2 || ctx.input_byte_opaque(0) != '_' || ctx.input_byte_opaque(1) != 'Z')
      return;
    bool repeated = false;
    ctx.call("parse_prefix", [&] {
      ctx.input_byte(0);
      ctx.input_byte(1);
      for (std::size_t i = 2; i + 1 < n && !repeated; ++i) {
        repeated = ctx.input_byte_opaque(i) == 'R' &&
                   ctx.input_byte_opaque(i + 1) == 'R';
      }
      if (repeated) ctx.call("register_btype", [&] { ctx.crash(); });
    });
    if (!repeated && n >= 3) {
      const std::uint8_t kind = ctx.input_byte_opaque(2);
      if (kind >= 'A' && kind <= 'Z') {
        ctx.call("parse_template", [&] {
          if (ctx.input_byte(2) == 'T')
            ctx.call("register_btype", [&] { ctx.crash(); });
        });
      }
    }
  });
}

TargetProgram make_cxxfilt() {
  TargetProgram p;
  p.id = "cxxfilt";
  p.call_graph = GraphBuilder(p.id)
                     .entry("main")
                     .edge("main", "demangle")
                     .edge("demangle", "parse_prefix")
                     .edge("demangle", "parse_template")
                     .edge("parse_prefix", "register_btype")
                     .edge("parse_template", "register_btype")
                     .build();
  p.reused_functions = reused(
      p.id, {"demangle", "parse_prefix", "parse_template", "register_btype"});
  p.body = [](RunContext& ctx) { ctx.call("main", [&] { demangle_body(ctx); }); };
  return p;
}

TargetProgram make_objdump() {
  TargetProgram p;
  p.id = "objdump";
  p.call_graph = GraphBuilder(p.id)
                     .entry("main")
                     .edge("main", "init_opts")
                     .edge("main", "load_file")
                     .edge("main", "dump_table")
                     .edge("main", "emit_output")
                     .edge("load_file", "scan_symbols")
                     .edge("scan_symbols", "demangle")
                     .edge("dump_table", "demangle")
                     .edge("demangle", "parse_prefix")
                     .edge("demangle", "parse_template")
                     .edge("parse_prefix", "register_btype")
                     .edge("parse_template", "register_btype")
                     // over-approximate edges from utility code
                     .edge("init_opts", "demangle")
                     .edge("emit_output", "parse_prefix")
                     .edge("init_opts", "opt_wide")
                     .edge("init_opts", "opt_style")
                     .edge("init_opts", "opt_syms")
                     .edge("init_opts", "opt_reloc")
                     .edge("opt_style", "opt_hp")
                     .build();
  p.reused_functions = reused(
      p.id, {"demangle", "parse_prefix", "parse_template", "register_btype"});
  p.body = [](RunContext& ctx) {
    ctx.call("main", [&] {
      ctx.call("init_opts", [&] {
        const std::size_t n = ctx.input_size();
        const std::uint8_t a = n >= 1 ? ctx.input_byte_opaque(0) : 0;
        const std::uint8_t b = n >= 2 ? ctx.input_byte_opaque(1) : 0;
        if (a & 0x80) ctx.call("opt_wide", [] {});
        if (a & 0x01) {
          ctx.call("opt_style", [&] {
            if (b & 0x01) ctx.call("opt_hp", [] {});
          });
        }
        if (b & 0x40) ctx.call("opt_syms", [] {});
        if (n >= 3 && (ctx.input_byte_opaque(2) & 0x02))
          ctx.call("opt_reloc", [] {});
      });
      const bool table_mode =
          ctx.input_size() > 0 && ctx.input_byte_opaque(0) == '@';
      if (table_mode) {
        ctx.call("dump_table", [&] { demangle_body(ctx); });
      } else {
        ctx.call("load_file",
                 [&] { ctx.call("scan_symbols", [&] { demangle_body(ctx); }); });
      }
      ctx.call("emit_output", [] {});
    });
  };
  return p;
}

// ---------------------------------------------------------------------------
// swf-suite: string-argument basic vs container-file target sharing a
// record handler (cxxfilt-vs-objdump style input mismatch).

void handle_record_body(RunContext& ctx, std::size_t base, std::size_t avail) {
  ctx.call("handle_record", [&] {
    std::uint8_t b0 = 0, b1 = 0, b2 = 0;
    if (avail >= 1) b0 = ctx.input_byte(base);
    if (avail >= 2) b1 = ctx.input_byte(base + 1);
    if (avail >= 3) b2 = ctx.input_byte(base + 2);
    if (avail >= 2 && b0 == 'B' && b1 == 'G') {
      ctx.call("getstring", [&] {
        if (avail >= 3 && b2 >= 0x80) ctx.crash();
      });
    }
  });
}

TargetProgram make_swfstr() {
  TargetProgram p;
  p.id = "swfstr";
  p.call_graph = GraphBuilder(p.id)
                     .entry("main")
                     .edge("main", "handle_record")
                     .edge("handle_record", "getstring")
                     .build();
  p.reused_functions = reused(p.id, {"handle_record", "getstring"});
  p.body = [](RunContext& ctx) {
    ctx.call("main", [&] { handle_record_body(ctx, 0, ctx.input_size()); });
  };
  return p;
}

TargetProgram make_swfcontainer() {
  TargetProgram p;
  p.id = "swfcontainer";
  p.call_graph = GraphBuilder(p.id)
                     .entry("main")
                     .edge("main", "read_header")
                     .edge("main", "iter_records")
                     .edge("iter_records", "handle_record")
                     .edge("handle_record", "getstring")
                     .build();
  p.reused_functions = reused(p.id, {"handle_record", "getstring"});
  p.body = [](RunContext& ctx) {
    ctx.call("main", [&] {
      bool ok = false;
      ctx.call("read_header", [&] {
        ok = ctx.input_size() >= 2 && ctx.input_byte_opaque(0) == 'F' &&
             ctx.input_byte_opaque(1) == 'C';
      });
      if (!ok) return;
      ctx.call("iter_records", [&] {
        std::size_t off = 2;
        while (off < ctx.input_size()) {
          const std::size_t len = ctx.input_byte_opaque(off);
          ++off;
          const std::size_t end = std::min(off + len, ctx.input_size());
          if (end > off) handle_record_body(ctx, off, end - off);
          off = end > off ? end : off + 1;
        }
      });
    });
  };
  return p;
}

// ---------------------------------------------------------------------------
// magic-guard: crash behind a six-byte magic comparison that generic
// mutation cannot guess; only the extracted dictionary row passes it.

constexpr std::array<std::uint8_t, 6> kImgMagic = {0x89, 'M', 'G', 'K', 0x1a, 0x0a};

void img_parse_body(RunContext& ctx) {
  bool ok = false;
  ctx.call("check_magic", [&] {
    const std::size_t n = std::min<std::size_t>(kImgMagic.size(), ctx.input_size());
    bool matched = n == kImgMagic.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (ctx.input_byte(i) != kImgMagic[i]) matched = false;
    }
    ok = matched;
  });
  if (!ok) return;
  ctx.call("parse_body", [&] {
    const std::uint8_t tag =
        ctx.input_size() >= 7 ? ctx.input_byte_opaque(6) : 0;
    if (tag != 0) ctx.call("alloc_huge", [&] { ctx.crash(); });
  });
}

TargetProgram make_imgread() {
  TargetProgram p;
  p.id = "imgread";
  p.call_graph = GraphBuilder(p.id)
                     .entry("main")
                     .edge("main", "check_magic")
                     .edge("main", "parse_body")
                     .edge("parse_body", "alloc_huge")
                     .build();
  p.reused_functions = reused(p.id, {"check_magic", "parse_body", "alloc_huge"});
  p.body = [](RunContext& ctx) { ctx.call("main", [&] { img_parse_body(ctx); }); };
  return p;
}

TargetProgram make_imgconvert() {
  TargetProgram p;
  p.id = "imgconvert";
  p.call_graph = GraphBuilder(p.id)
                     .entry("main")
                     .edge("main", "open_input")
                     .edge("open_input", "check_magic")
                     .edge("main", "parse_body")
                     .edge("parse_body", "alloc_huge")
                     .edge("main", "write_output")
                     .build();
  p.reused_functions = reused(p.id, {"check_magic", "parse_body", "alloc_huge"});
  p.body = [](RunContext& ctx) {
    ctx.call("main", [&] {
      bool ok = false;
      ctx.call("open_input", [&] {
        ctx.call("check_magic", [&] {
          const std::size_t n =
              std::min<std::size_t>(kImgMagic.size(), ctx.input_size());
          bool matched = n == kImgMagic.size();
          for (std::size_t i = 0; i < n; ++i) {
            if (ctx.input_byte(i) != kImgMagic[i]) matched = false;
          }
          ok = matched;
        });
      });
      if (ok) {
        ctx.call("parse_body", [&] {
          const std::uint8_t tag =
              ctx.input_size() >= 7 ? ctx.input_byte_opaque(6) : 0;
          if (tag != 0) ctx.call("alloc_huge", [&] { ctx.crash(); });
        });
      }
      ctx.call("write_output", [] {});
    });
  };
  return p;
}

// ---------------------------------------------------------------------------
// router-suite: the crash sits behind one specific dispatch path among
// several that all reach the sink statically.

TargetProgram make_routebasic() {
  TargetProgram p;
  p.id = "routebasic";
  p.call_graph = GraphBuilder(p.id)
                     .entry("main")
                     .edge("main", "dispatch")
                     .edge("dispatch", "handler_a")
                     .edge("dispatch", "handler_b")
                     .edge("dispatch", "handler_c")
                     .edge("handler_a", "check_auth")
                     .edge("check_auth", "vuln_sink")
                     .edge("handler_b", "vuln_sink")
                     .build();
  p.reused_functions =
      reused(p.id, {"handler_a", "handler_b", "check_auth", "vuln_sink"});
  p.body = [](RunContext& ctx) {
    ctx.call("main", [&] {
      ctx.call("dispatch", [&] {
        if (ctx.input_size() < 1) return;
        const std::uint8_t sel = ctx.input_byte_opaque(0);
        if (sel == 'a') {
          ctx.call("handler_a", [&] {
            const std::uint8_t key =
                ctx.input_size() >= 2 ? ctx.input_byte(1) : 0xff;
            if (key < 0x40) {
              ctx.call("check_auth", [&] {
                if (key == '!')
                  ctx.call("vuln_sink", [&] { ctx.crash(); });
              });
            }
          });
        } else if (sel == 'b') {
          ctx.call("handler_b", [&] {
            const std::uint8_t key =
                ctx.input_size() >= 2 ? ctx.input_byte(1) : 0xff;
            if (key == '!') ctx.call("vuln_sink", [&] { ctx.crash(); });
          });
        } else if (sel == 'c') {
          ctx.call("handler_c", [] {});
        }
      });
    });
  };
  return p;
}

TargetProgram make_routetarget() {
  TargetProgram p;
  p.id = "routetarget";
  p.call_graph = GraphBuilder(p.id)
                     .entry("main")
                     .edge("main", "read_cfg")
                     .edge("main", "dispatch")
                     .edge("dispatch", "handler_a")
                     .edge("dispatch", "handler_b")
                     .edge("dispatch", "handler_x")
                     .edge("handler_a", "check_auth")
                     .edge("check_auth", "vuln_sink")
                     .edge("handler_b", "vuln_sink")
                     .edge("handler_x", "vuln_sink")
                     .edge("vuln_sink", "fmt_frame")
                     // over-approximate edges from config handling
                     .edge("read_cfg", "check_auth")
                     .edge("cfg_extra", "check_auth")
                     .edge("read_cfg", "cfg_flags")
                     .edge("read_cfg", "cfg_verbose")
                     .edge("read_cfg", "cfg_extra")
                     .edge("read_cfg", "cfg_tab")
                     .edge("cfg_flags", "cfg_color")
                     .edge("cfg_verbose", "cfg_log")
                     .edge("cfg_extra", "cfg_env")
                     .build();
  p.reused_functions =
      reused(p.id, {"handler_a", "handler_b", "check_auth", "vuln_sink"});
  p.body = [](RunContext& ctx) {
    ctx.call("main", [&] {
      ctx.call("read_cfg", [&] {
        const std::size_t n = ctx.input_size();
        const std::uint8_t c = n >= 1 ? ctx.input_byte_opaque(0) : 0;
        const std::uint8_t c1 = n >= 2 ? ctx.input_byte_opaque(1) : 0;
        const std::uint8_t c2 = n >= 3 ? ctx.input_byte_opaque(2) : 0;
        // unrelated parser bug, distinct crash site
        if (c == 0xff) ctx.crash();
        if (c & 0x80) {
          ctx.call("cfg_flags", [&] {
            if (c1 & 0x80) ctx.call("cfg_color", [] {});
          });
        }
        if (c & 0x01) {
          ctx.call("cfg_verbose", [&] {
            if (c1 & 0x01) ctx.call("cfg_log", [] {});
          });
        }
        if (c1 & 0x40) {
          ctx.call("cfg_extra", [&] {
            if (c2 & 0x40) ctx.call("cfg_env", [] {});
          });
        }
        if (c2 & 0x02) ctx.call("cfg_tab", [] {});
      });
      ctx.call("dispatch", [&] {
        if (ctx.input_size() < 1) return;
        const std::uint8_t sel = ctx.input_byte_opaque(0);
        if (sel == 'a') {
          ctx.call("handler_a", [&] {
            const std::uint8_t key =
                ctx.input_size() >= 2 ? ctx.input_byte(1) : 0xff;
            if (key < 0x40) {
              ctx.call("check_auth", [&] {
                if (key == '!') {
                  ctx.call("vuln_sink", [&] {
                    const std::uint8_t marker =
                        ctx.input_size() >= 3 ? ctx.input_byte_opaque(2) : 0xff;
                    if (marker < 0x40) {
                      ctx.call("fmt_frame", [] {});
                      if (marker == '#') ctx.crash();
                    }
                  });
                }
              });
            }
          });
        } else if (sel == 'b') {
          ctx.call("handler_b", [&] {
            const std::uint8_t key =
                ctx.input_size() >= 2 ? ctx.input_byte(1) : 0xff;
            // sanitized before the sink: no crash on this path
            if (key == '!') ctx.call("vuln_sink", [] {});
          });
        } else if (sel == 'x') {
          ctx.call("handler_x", [&] { ctx.call("vuln_sink", [] {}); });
        }
      });
    });
  };
  return p;
}

// ---------------------------------------------------------------------------
// archive-suite: member lookup shared between a flat lister and an
// archive extractor that prepends a one-byte header; the basic entry
// calls the reused code directly, so only part of the path carries over.

constexpr std::array<std::uint8_t, 4> kMemberTag = {'L', 'N', 'K', 0x7f};

void find_member_body(RunContext& ctx, std::size_t base) {
  ctx.call("find_member", [&] {
    const std::size_t n = ctx.input_size();
    bool matched = n >= base + kMemberTag.size();
    for (std::size_t i = 0; i < kMemberTag.size() && base + i < n; ++i) {
      if (ctx.input_byte(base + i) != kMemberTag[i]) matched = false;
    }
    const std::size_t len_off = base + kMemberTag.size();
    if (!matched || n <= len_off) return;  // truncated member record
    ctx.call("load_member", [&] {
      if (ctx.input_byte_opaque(len_off) >= 0x80) ctx.crash();
    });
  });
}

TargetProgram make_arlist() {
  TargetProgram p;
  p.id = "arlist";
  p.call_graph = GraphBuilder(p.id)
                     .entry("main")
                     .edge("main", "find_member")
                     .edge("find_member", "load_member")
                     .build();
  p.reused_functions = reused(p.id, {"find_member", "load_member"});
  p.body = [](RunContext& ctx) {
    ctx.call("main", [&] { find_member_body(ctx, 0); });
  };
  return p;
}

TargetProgram make_arextract() {
  TargetProgram p;
  p.id = "arextract";
  p.call_graph = GraphBuilder(p.id)
                     .entry("main")
                     .edge("main", "check_armag")
                     .edge("main", "scan_members")
                     .edge("main", "emit_listing")
                     .edge("scan_members", "find_member")
                     .edge("find_member", "load_member")
                     .build();
  p.reused_functions = reused(p.id, {"find_member", "load_member"});
  p.body = [](RunContext& ctx) {
    ctx.call("main", [&] {
      bool ok = false;
      ctx.call("check_armag", [&] {
        ok = ctx.input_size() >= 1 && ctx.input_byte_opaque(0) == '!';
      });
      if (ok) ctx.call("scan_members", [&] { find_member_body(ctx, 1); });
      ctx.call("emit_listing", [] {});
    });
  };
  return p;
}

// ---------------------------------------------------------------------------
// tiff-uncalled: the target carries the vulnerable function but never
// calls it.

TargetProgram make_tiffsplit() {
  TargetProgram p;
  p.id = "tiffsplit";
  p.call_graph = GraphBuilder(p.id)
                     .entry("main")
                     .edge("main", "read_dir")
                     .edge("read_dir", "getfield_vuln")
                     .build();
  p.reused_functions = reused(p.id, {"read_dir", "getfield_vuln"});
  p.body = [](RunContext& ctx) {
    ctx.call("main", [&] {
      ctx.call("read_dir", [&] {
        if (ctx.input_size() < 2) return;
        const std::uint8_t t0 = ctx.input_byte(0);
        const std::uint8_t t1 = ctx.input_byte(1);
        if (t0 == 0x01 && t1 == 0x3d)
          ctx.call("getfield_vuln", [&] { ctx.crash(); });
      });
    });
  };
  return p;
}

TargetProgram make_tiffinfo() {
  TargetProgram p;
  p.id = "tiffinfo";
  p.call_graph = GraphBuilder(p.id)
                     .entry("main")
                     .edge("main", "read_dir")
                     .edge("main", "print_info")
                     .node("getfield_vuln")  // present but uncalled
                     .build();
  p.reused_functions = reused(p.id, {"read_dir", "getfield_vuln"});
  p.body = [](RunContext& ctx) {
    ctx.call("main", [&] {
      ctx.call("read_dir", [&] {
        const std::size_t n = std::min<std::size_t>(8, ctx.input_size());
        for (std::size_t i = 0; i < n; ++i) ctx.input_byte_opaque(i);
      });
      ctx.call("print_info", [] {});
    });
  };
  return p;
}

// ---------------------------------------------------------------------------
// hardcoded-tag: the reused setter is reached, but the critical tag value
// is hard-coded in the target so the vulnerable getter call is dead code.

TargetProgram make_tagbasic() {
  TargetProgram p;
  p.id = "tagbasic";
  p.call_graph = GraphBuilder(p.id)
                     .entry("main")
                     .edge("main", "read_tags")
                     .edge("read_tags", "set_field")
                     .edge("set_field", "vget_vuln")
                     .build();
  p.reused_functions = reused(p.id, {"set_field", "vget_vuln"});
  p.body = [](RunContext& ctx) {
    ctx.call("main", [&] {
      ctx.call("read_tags", [&] {
        ctx.call("set_field", [&] {
          if (ctx.input_size() < 2) return;
          const std::uint8_t hi = ctx.input_byte(0);
          const std::uint8_t lo = ctx.input_byte(1);
          if (hi == 0x01 && lo == 0x3d)
            ctx.call("vget_vuln", [&] { ctx.crash(); });
        });
      });
    });
  };
  return p;
}

TargetProgram make_tagview() {
  TargetProgram p;
  p.id = "tagview";
  p.call_graph = GraphBuilder(p.id)
                     .entry("main")
                     .edge("main", "read_tags")
                     .edge("read_tags", "set_field")
                     .edge("main", "render")
                     .node("vget_vuln")  // call eliminated with the constant tag
                     .build();
  p.reused_functions = reused(p.id, {"set_field", "vget_vuln"});
  p.body = [](RunContext& ctx) {
    ctx.call("main", [&] {
      ctx.call("read_tags", [&] {
        ctx.call("set_field", [&] {
          const std::size_t n = std::min<std::size_t>(4, ctx.input_size());
          for (std::size_t i = 0; i < n; ++i) ctx.input_byte_opaque(i);
        });
      });
      ctx.call("render", [] {});
    });
  };
  return p;
}

// ---------------------------------------------------------------------------
// pdf-absent: the vulnerable function does not exist in the target at
// all; only the surrounding parser was reused.

TargetProgram make_pdfbasic() {
  TargetProgram p;
  p.id = "pdfbasic";
  p.call_graph = GraphBuilder(p.id)
                     .entry("main")
                     .edge("main", "parse_obj")
                     .edge("parse_obj", "getop_vuln")
                     .build();
  p.reused_functions = reused(p.id, {"parse_obj", "getop_vuln"});
  p.body = [](RunContext& ctx) {
    ctx.call("main", [&] {
      ctx.call("parse_obj", [&] {
        if (ctx.input_size() < 2) return;
        const std::uint8_t b0 = ctx.input_byte(0);
        const std::uint8_t b1 = ctx.input_byte(1);
        if (b0 == 'o' && b1 == 'b')
          ctx.call("getop_vuln", [&] { ctx.crash(); });
      });
    });
  };
  return p;
}

TargetProgram make_pdfview() {
  TargetProgram p;
  p.id = "pdfview";
  p.call_graph = GraphBuilder(p.id)
                     .entry("main")
                     .edge("main", "parse_obj")
                     .edge("parse_obj", "render")
                     .build();
  p.reused_functions = reused(p.id, {"parse_obj"});
  p.body = [](RunContext& ctx) {
    ctx.call("main", [&] {
      ctx.call("parse_obj", [&] {
        const std::size_t n = std::min<std::size_t>(4, ctx.input_size());
        for (std::size_t i = 0; i < n; ++i) ctx.input_byte_opaque(i);
        ctx.call("render", [] {});
      });
    });
  };
  return p;
}

std::vector<BenchmarkPair> build_corpus() {
  std::vector<BenchmarkPair> pairs;

  {
    BenchmarkPair pair;
    pair.id = "demangle-suite";
    pair.basic = make_cxxfilt();
    pair.target = make_objdump();
    pair.poc = bytes("_ZRR");
    pair.vulnerable = pair.basic.fn("register_btype");
    pair.expected = VerdictKind::Triggered;
    pair.initial_seed = bytes("hello");
    pair.note = "same input format on both sides";
    pairs.push_back(std::move(pair));
  }
  {
    BenchmarkPair pair;
    pair.id = "swf-suite";
    pair.basic = make_swfstr();
    pair.target = make_swfcontainer();
    pair.poc = {'B', 'G', 0x90};
    pair.vulnerable = pair.basic.fn("getstring");
    pair.expected = VerdictKind::Triggered;
    pair.initial_seed = {'F', 'C', 0x03, 'a', 'b', 'c'};
    pair.note = "string-argument basic vs container-file target";
    pairs.push_back(std::move(pair));
  }
  {
    BenchmarkPair pair;
    pair.id = "magic-guard";
    pair.basic = make_imgread();
    pair.target = make_imgconvert();
    pair.poc.assign(kImgMagic.begin(), kImgMagic.end());
    pair.poc.push_back(0x01);
    pair.vulnerable = pair.basic.fn("alloc_huge");
    pair.expected = VerdictKind::Triggered;
    pair.initial_seed = bytes("junk");
    pair.note = "crash behind a multi-byte magic comparison";
    pairs.push_back(std::move(pair));
  }
  {
    BenchmarkPair pair;
    pair.id = "router-suite";
    pair.basic = make_routebasic();
    pair.target = make_routetarget();
    pair.poc = bytes("a!");
    pair.vulnerable = pair.basic.fn("vuln_sink");
    pair.expected = VerdictKind::Triggered;
    pair.initial_seed = bytes("cfg");
    pair.note = "crash requires one call path among several static ones";
    pairs.push_back(std::move(pair));
  }
  {
    BenchmarkPair pair;
    pair.id = "archive-suite";
    pair.basic = make_arlist();
    pair.target = make_arextract();
    pair.poc.assign(kMemberTag.begin(), kMemberTag.end());
    pair.poc.push_back(0x90);
    pair.vulnerable = pair.basic.fn("load_member");
    pair.expected = VerdictKind::Triggered;
    pair.initial_seed = bytes("!abc");
    pair.note = "reused lookup sits one call level deeper in the target";
    pairs.push_back(std::move(pair));
  }
  {
    BenchmarkPair pair;
    pair.id = "tiff-uncalled";
    pair.basic = make_tiffsplit();
    pair.target = make_tiffinfo();
    pair.poc = {0x01, 0x3d};
    pair.vulnerable = pair.basic.fn("getfield_vuln");
    pair.expected = VerdictKind::NotReached;
    pair.initial_seed = bytes("II*");
    pair.note = "vulnerable code present but uncalled";
    pairs.push_back(std::move(pair));
  }
  {
    BenchmarkPair pair;
    pair.id = "hardcoded-tag";
    pair.basic = make_tagbasic();
    pair.target = make_tagview();
    pair.poc = {0x01, 0x3d};
    pair.vulnerable = pair.basic.fn("vget_vuln");
    pair.expected = VerdictKind::NotReached;
    pair.initial_seed = {0x00, 0x00, 0x00};
    pair.note = "critical variable hard-coded in the target";
    pairs.push_back(std::move(pair));
  }
  {
    BenchmarkPair pair;
    pair.id = "pdf-absent";
    pair.basic = make_pdfbasic();
    pair.target = make_pdfview();
    pair.poc = bytes("ob");
    pair.vulnerable = pair.basic.fn("getop_vuln");
    pair.expected = VerdictKind::NotReached;
    pair.initial_seed = bytes("xx");
    pair.note = "vulnerable function absent from the target";
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

}  // namespace

const std::vector<BenchmarkPair>& corpus() {
  static const std::vector<BenchmarkPair> pairs = build_corpus();
  return pairs;
}

}  // namespace tracefuzz
