/*
 * Copyright (c) 2026, The Tilecast Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "bench/assets.hpp"

#include <algorithm>
#include <array>
#include <random>

#include <json.hpp>

#include "capture/page_document.hpp"

namespace tilecast::bench {

namespace {

using protocol::Raster;
using protocol::Rgba;

// Fixed mapping from raw engine output, so results do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }
  bool chance(int percent) { return uniform(0, 99) < percent; }
  std::uint8_t byte(int lo, int hi) { return static_cast<std::uint8_t>(uniform(lo, hi)); }

 private:
  std::mt19937_64 engine_;
};

constexpr std::int64_t kViewportW = 1024;
constexpr std::int64_t kViewportH = 768;
constexpr std::int64_t kGlyphW = 5;
constexpr std::int64_t kGlyphH = 8;
constexpr std::int64_t kAdvance = 6;
constexpr std::int64_t kSpace = 4;
constexpr std::int64_t kLineHeight = 16;

constexpr std::array<const char*, 9> kTitles = {
    "Fuji Xerox homepage",       "Quarterly research digest", "Printer driver downloads",
    "Conference travel notes",   "Document archive search",   "Office supply catalogue",
    "Collaborative editing lab", "Support forum threads",     "Annual sustainability report"};

constexpr std::array<const char*, 48> kWords = {
    "printer",  "toner",   "network", "archive", "meeting", "report",  "capture", "browser",
    "session",  "viewer",  "server",  "image",   "scanner", "office",  "project", "summary",
    "research", "design",  "result",  "update",  "release", "support", "manual",  "service",
    "quality",  "colour",  "device",  "storage", "profile", "library", "journal", "pattern",
    "signal",   "window",  "channel", "product", "partner", "account", "system",  "display",
    "portal",   "process", "segment", "feature", "catalog", "memo",    "agenda",  "budget"};

// 5x8 bitmap derived from the character; distinct characters look distinct.
std::uint64_t glyph_bits(unsigned char c) {
  std::uint64_t z = 0x9e3779b97f4a7c15ull * (c + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::int64_t text_width(const std::string& s) {
  std::int64_t w = 0;
  for (char c : s) w += c == ' ' ? kSpace : kAdvance;
  return std::max<std::int64_t>(w - 1, 1);
}

void draw_text(Raster& r, std::int64_t x, std::int64_t y, const std::string& s, Rgba ink) {
  for (char ch : s) {
    if (ch == ' ') {
      x += kSpace;
      continue;
    }
    const std::uint64_t bits = glyph_bits(static_cast<unsigned char>(ch));
    for (std::int64_t gy = 0; gy < kGlyphH; ++gy) {
      for (std::int64_t gx = 0; gx < kGlyphW; ++gx) {
        // Full top and bottom strokes give every glyph a stable silhouette.
        const bool on = gy == 0 || gy == kGlyphH - 1 || ((bits >> (gy * kGlyphW + gx)) & 1u);
        if (on) r.fill_rect(x + gx, y + gy, 1, 1, ink);
      }
    }
    x += kAdvance;
  }
}

void draw_gradient(Raster& r, std::int64_t x0, std::int64_t y0, std::int64_t w, std::int64_t h,
                   Rgba a, Rgba b) {
  for (std::int64_t y = 0; y < h; ++y) {
    for (std::int64_t x = 0; x < w; ++x) {
      const std::int64_t t = (x * 256 / w + y * 256 / h) / 2;  // 0..255
      Rgba c;
      for (int k = 0; k < 3; ++k) c[k] = static_cast<std::uint8_t>((a[k] * (255 - t) + b[k] * t) / 255);
      c[3] = 255;
      r.fill_rect(x0 + x, y0 + y, 1, 1, c);
    }
  }
}

void draw_disc(Raster& r, std::int64_t cx, std::int64_t cy, std::int64_t radius, Rgba c,
               std::int64_t clip_x, std::int64_t clip_y, std::int64_t clip_w, std::int64_t clip_h) {
  for (std::int64_t y = cy - radius; y <= cy + radius; ++y) {
    for (std::int64_t x = cx - radius; x <= cx + radius; ++x) {
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) > radius * radius) continue;
      if (x < clip_x || y < clip_y || x >= clip_x + clip_w || y >= clip_y + clip_h) continue;
      r.fill_rect(x, y, 1, 1, c);
    }
  }
}

std::string sentence(Rng& rng, std::int64_t max_width) {
  std::string line;
  for (;;) {
    const std::string word = kWords[rng.uniform(0, kWords.size() - 1)];
    const std::string next = line.empty() ? word : line + " " + word;
    if (text_width(next) > max_width) break;
    line = next;
  }
  return line;
}

capture::PageDocument make_page(Rng& rng, int index) {
  capture::PageDocument doc;
  doc.url = "https://pages.example/site" + std::to_string(index) + "/index.html";
  const Rgba background{rng.byte(236, 252), rng.byte(236, 252), rng.byte(236, 252), 255};
  const Rgba banner{rng.byte(20, 90), rng.byte(40, 110), rng.byte(90, 160), 255};
  const Rgba ink{rng.byte(10, 50), rng.byte(10, 50), rng.byte(10, 50), 255};
  doc.raster = Raster(kBenchPageWidth, kBenchPageHeight, background);
  Raster& r = doc.raster;

  const auto add_run = [&](std::string text, std::int64_t x, std::int64_t y, Rgba colour) {
    draw_text(r, x, y, text, colour);
    const std::int64_t w = text_width(text);
    doc.text_runs.push_back({std::move(text), {x, y, w, kGlyphH}, doc.url, 0});
  };

  r.fill_rect(0, 0, kBenchPageWidth, 72, banner);
  add_run(kTitles[index], 40, 32, {250, 250, 250, 255});
  const std::string contact = "Contact webmaster" + std::to_string(index) +
                              "@pages.example or call 415-555-01" +
                              std::to_string(10 + index);
  add_run(contact, 40, 88, ink);

  std::int64_t y = 120;
  while (y < kBenchPageHeight - 80) {
    if (rng.chance(40)) {
      const std::int64_t h = rng.uniform(140, 300);
      const std::int64_t w = rng.uniform(320, 940);
      const std::int64_t x = rng.uniform(40, kBenchPageWidth - 40 - w);
      if (y + h > kBenchPageHeight - 40) break;
      const Rgba a{rng.byte(60, 220), rng.byte(60, 220), rng.byte(60, 220), 255};
      const Rgba b{rng.byte(60, 220), rng.byte(60, 220), rng.byte(60, 220), 255};
      draw_gradient(r, x, y, w, h, a, b);
      const int discs = static_cast<int>(rng.uniform(1, 3));
      for (int i = 0; i < discs; ++i) {
        const Rgba c{rng.byte(0, 255), rng.byte(0, 255), rng.byte(0, 255), 255};
        draw_disc(r, x + rng.uniform(0, w - 1), y + rng.uniform(0, h - 1), rng.uniform(12, 60), c,
                  x, y, w, h);
      }
      y += h + rng.uniform(24, 48);
    } else {
      const int lines = static_cast<int>(rng.uniform(3, 9));
      const std::int64_t x = rng.uniform(40, 80);
      const std::int64_t width = rng.uniform(420, kBenchPageWidth - 80 - x);
      for (int i = 0; i < lines && y < kBenchPageHeight - 40; ++i) {
        add_run(sentence(rng, i + 1 == lines ? width / 2 : width), x, y, ink);
        y += kLineHeight;
      }
      y += rng.uniform(16, 40);
    }
  }
  return doc;
}

struct Visit {
  int page;
  std::int64_t start_ms;
  std::int64_t end_ms;
};

void script_visit(Rng& rng, const Visit& v, std::vector<capture::ScriptEvent>& out) {
  using namespace capture;
  out.push_back({v.start_ms, NavigateEvent{"page" + std::to_string(v.page), {}, {}}});
  const std::int64_t max_scroll = kBenchPageHeight - kViewportH;

  // Scroll timeline, starting at the top after navigation.
  std::vector<std::pair<std::int64_t, std::int64_t>> scrolls{{v.start_ms, 0}};
  std::int64_t t = v.start_ms + rng.uniform(1500, 2500);
  std::int64_t pos = 0;
  while (t < v.end_ms - 500) {
    std::int64_t step = rng.uniform(120, 520);
    if (rng.chance(25)) step = -step;
    pos = std::clamp<std::int64_t>(pos + step, 0, max_scroll);
    scrolls.emplace_back(t, pos);
    out.push_back({t, ScrollEvent{0, pos}});
    t += rng.uniform(900, 2200);
  }
  const auto scroll_at = [&](std::int64_t when) {
    std::int64_t s = 0;
    for (const auto& [st, sy] : scrolls) {
      if (st <= when) s = sy;
    }
    return s;
  };

  static constexpr std::array<protocol::CursorShape, 3> kShapes = {
      protocol::CursorShape::default_arrow, protocol::CursorShape::pointer,
      protocol::CursorShape::text};
  for (t = v.start_ms + rng.uniform(100, 400); t < v.end_ms; t += rng.uniform(350, 900)) {
    const std::int64_t x = rng.uniform(0, kViewportW - 1);
    const std::int64_t y = scroll_at(t) + rng.uniform(0, kViewportH - 1);
    out.push_back({t, CursorEvent{x, y, kShapes[rng.uniform(0, kShapes.size() - 1)]}});
  }

  const int changes = static_cast<int>(rng.uniform(1, 2));
  for (int i = 0; i < changes; ++i) {
    const std::int64_t when = rng.uniform(v.start_ms + 1000, v.end_ms - 1000);
    MutateEvent m;
    m.width = rng.uniform(60, 180);
    m.height = rng.uniform(16, 40);
    m.x = rng.uniform(0, kBenchPageWidth - m.width);
    m.y = std::min(scroll_at(when) + rng.uniform(0, kViewportH - m.height), kBenchPageHeight - m.height);
    m.fill = {rng.byte(0, 255), rng.byte(0, 255), rng.byte(0, 255), 255};
    out.push_back({when, m});
  }
}

}  // namespace

BenchmarkAssets generate_benchmark_assets(std::uint64_t seed) {
  Rng rng(seed);
  BenchmarkAssets assets;
  for (int i = 0; i < kBenchPages; ++i) {
    assets.documents.emplace("page" + std::to_string(i), make_page(rng, i));
  }

  // Every page once, then two revisits.
  std::vector<int> order;
  for (int i = 0; i < kBenchPages; ++i) order.push_back(i);
  order.push_back(static_cast<int>(rng.uniform(0, kBenchPages - 1)));
  order.push_back(static_cast<int>(rng.uniform(0, kBenchPages - 1)));

  std::vector<capture::ScriptEvent> events;
  const auto visits = static_cast<std::int64_t>(order.size());
  for (std::int64_t i = 0; i < visits; ++i) {
    const Visit v{order[i], kBenchDurationMs * i / visits, kBenchDurationMs * (i + 1) / visits};
    std::vector<capture::ScriptEvent> visit_events;
    script_visit(rng, v, visit_events);
    std::stable_sort(visit_events.begin(), visit_events.end(),
                     [](const auto& a, const auto& b) { return a.t_ms < b.t_ms; });
    events.insert(events.end(), visit_events.begin(), visit_events.end());
  }
  events.push_back({kBenchDurationMs, capture::EndEvent{}});
  assets.script.events = std::move(events);
  capture::validate_script(assets.script);
  return assets;
}

void write_benchmark_assets(const BenchmarkAssets& assets, const std::filesystem::path& dir) {
  const auto docs = dir / "docs";
  std::filesystem::create_directories(docs);
  for (const auto& [id, doc] : assets.documents) {
    capture::write_png_file(docs / (id + ".png"), doc.raster);
    capture::write_file(docs / (id + ".runs.json"), capture::serialize_text_runs(doc.text_runs));
    nlohmann::ordered_json manifest;
    manifest["url"] = doc.url;
    manifest["raster"] = id + ".png";
    manifest["text_runs"] = id + ".runs.json";
    capture::write_file(docs / (id + ".json"), manifest.dump(2) + "\n");
  }
  capture::write_file(dir / "script.jsonl", capture::serialize_session_script(assets.script));
}

}  // namespace tilecast::bench
