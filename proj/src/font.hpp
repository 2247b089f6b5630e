#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string_view>

#include "ivcompare/compositor.hpp"

namespace ivc::detail {

// 5x7 bitmaps, one byte per row, bit 4 is the leftmost column.
struct Glyph
{
    char ch;
    std::array<std::uint8_t, 7> rows;
};

inline constexpr std::array<Glyph, 12> kGlyphs = {{
    {'A', {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
    {'B', {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E}},
    {'D', {0x1E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1E}},
    {'E', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}},
    {'F', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10}},
    {'G', {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F}},
    {'I', {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'K', {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11}},
    {'L', {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F}},
    {'N', {0x11, 0x19, 0x15, 0x13, 0x11, 0x11, 0x11}},
    {'P', {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10}},
    {'R', {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11}},
}};

inline constexpr int kGlyphAdvance = 6;
inline constexpr int kGlyphHeight = 7;

/// Unknown characters advance without drawing.
inline void draw_text(Frame &f, int x, int y, std::string_view text, Rgba color, int scale = 1)
{
    for (char ch : text) {
        const auto it = std::find_if(kGlyphs.begin(), kGlyphs.end(), [ch](const Glyph &g) { return g.ch == ch; });
        if (it != kGlyphs.end()) {
            for (int row = 0; row < kGlyphHeight; ++row)
                for (int col = 0; col < 5; ++col)
                    if (it->rows[row] & (0x10 >> col))
                        for (int sy = 0; sy < scale; ++sy)
                            for (int sx = 0; sx < scale; ++sx) {
                                const int px = x + col * scale + sx, py = y + row * scale + sy;
                                if (f.contains(px, py))
                                    f.set(px, py, color);
                            }
        }
        x += kGlyphAdvance * scale;
    }
}

} // namespace ivc::detail
