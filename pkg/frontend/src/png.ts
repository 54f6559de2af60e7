/**
 * PNG backend: rasterizes the figure without native dependencies.
 * Scanline polygon fill, DDA lines, a 5x7 bitmap font for labels, and a
 * minimal PNG encoder on top of node:zlib.
 */

import { deflateSync } from "node:zlib";
import { BASELINE_COLOR, Layout, Point } from "./layout.js";

// --- tiny bitmap font (5x7, uppercase) --------------------------------------

const GLYPHS: Record<string, string[]> = {
  A: [".XXX.", "X...X", "X...X", "XXXXX", "X...X", "X...X", "X...X"],
  B: ["XXXX.", "X...X", "X...X", "XXXX.", "X...X", "X...X", "XXXX."],
  C: [".XXX.", "X...X", "X....", "X....", "X....", "X...X", ".XXX."],
  D: ["XXXX.", "X...X", "X...X", "X...X", "X...X", "X...X", "XXXX."],
  E: ["XXXXX", "X....", "X....", "XXXX.", "X....", "X....", "XXXXX"],
  F: ["XXXXX", "X....", "X....", "XXXX.", "X....", "X....", "X...."],
  G: [".XXX.", "X...X", "X....", "X.XXX", "X...X", "X...X", ".XXX."],
  H: ["X...X", "X...X", "X...X", "XXXXX", "X...X", "X...X", "X...X"],
  I: ["XXXXX", "..X..", "..X..", "..X..", "..X..", "..X..", "XXXXX"],
  J: ["..XXX", "...X.", "...X.", "...X.", "...X.", "X..X.", ".XX.."],
  K: ["X...X", "X..X.", "X.X..", "XX...", "X.X..", "X..X.", "X...X"],
  L: ["X....", "X....", "X....", "X....", "X....", "X....", "XXXXX"],
  M: ["X...X", "XX.XX", "X.X.X", "X.X.X", "X...X", "X...X", "X...X"],
  N: ["X...X", "XX..X", "X.X.X", "X..XX", "X...X", "X...X", "X...X"],
  O: [".XXX.", "X...X", "X...X", "X...X", "X...X", "X...X", ".XXX."],
  P: ["XXXX.", "X...X", "X...X", "XXXX.", "X....", "X....", "X...."],
  Q: [".XXX.", "X...X", "X...X", "X...X", "X.X.X", "X..X.", ".XX.X"],
  R: ["XXXX.", "X...X", "X...X", "XXXX.", "X.X..", "X..X.", "X...X"],
  S: [".XXXX", "X....", "X....", ".XXX.", "....X", "....X", "XXXX."],
  T: ["XXXXX", "..X..", "..X..", "..X..", "..X..", "..X..", "..X.."],
  U: ["X...X", "X...X", "X...X", "X...X", "X...X", "X...X", ".XXX."],
  V: ["X...X", "X...X", "X...X", "X...X", "X...X", ".X.X.", "..X.."],
  W: ["X...X", "X...X", "X...X", "X.X.X", "X.X.X", "XX.XX", "X...X"],
  X: ["X...X", "X...X", ".X.X.", "..X..", ".X.X.", "X...X", "X...X"],
  Y: ["X...X", "X...X", ".X.X.", "..X..", "..X..", "..X..", "..X.."],
  Z: ["XXXXX", "....X", "...X.", "..X..", ".X...", "X....", "XXXXX"],
  "0": [".XXX.", "X...X", "X..XX", "X.X.X", "XX..X", "X...X", ".XXX."],
  "1": ["..X..", ".XX..", "..X..", "..X..", "..X..", "..X..", "XXXXX"],
  "2": [".XXX.", "X...X", "....X", "...X.", "..X..", ".X...", "XXXXX"],
  "3": ["XXXXX", "...X.", "..X..", "...X.", "....X", "X...X", ".XXX."],
  "4": ["...X.", "..XX.", ".X.X.", "X..X.", "XXXXX", "...X.", "...X."],
  "5": ["XXXXX", "X....", "XXXX.", "....X", "....X", "X...X", ".XXX."],
  "6": ["..XX.", ".X...", "X....", "XXXX.", "X...X", "X...X", ".XXX."],
  "7": ["XXXXX", "....X", "...X.", "..X..", ".X...", ".X...", ".X..."],
  "8": [".XXX.", "X...X", "X...X", ".XXX.", "X...X", "X...X", ".XXX."],
  "9": [".XXX.", "X...X", "X...X", ".XXXX", "....X", "...X.", ".XX.."],
  ".": [".....", ".....", ".....", ".....", ".....", ".XX..", ".XX.."],
  "-": [".....", ".....", ".....", "XXXXX", ".....", ".....", "....."],
  "(": ["...X.", "..X..", ".X...", ".X...", ".X...", "..X..", "...X."],
  ")": [".X...", "..X..", "...X.", "...X.", "...X.", "..X..", ".X..."],
  "=": [".....", ".....", "XXXXX", ".....", "XXXXX", ".....", "....."],
  " ": [".....", ".....", ".....", ".....", ".....", ".....", "....."],
};

const GLYPH_W = 5;
const GLYPH_H = 7;

function parseColor(hex: string): [number, number, number] {
  return [parseInt(hex.slice(1, 3), 16), parseInt(hex.slice(3, 5), 16),
          parseInt(hex.slice(5, 7), 16)];
}

export class Raster {
  readonly data: Uint8ClampedArray;

  constructor(readonly width: number, readonly height: number) {
    this.data = new Uint8ClampedArray(width * height * 4);
    this.data.fill(255);
  }

  blend(x: number, y: number, rgb: [number, number, number], alpha: number) {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const k = (y * this.width + x) * 4;
    for (let c = 0; c < 3; c++) {
      this.data[k + c] = Math.round(rgb[c] * alpha + this.data[k + c] * (1 - alpha));
    }
    this.data[k + 3] = 255;
  }

  fillRect(x: number, y: number, w: number, h: number,
           rgb: [number, number, number], alpha = 1) {
    for (let yy = y; yy < y + h; yy++) {
      for (let xx = x; xx < x + w; xx++) this.blend(xx, yy, rgb, alpha);
    }
  }

  /** even-odd scanline fill */
  fillPolygon(points: Point[], rgb: [number, number, number], alpha: number) {
    if (points.length < 3) return;
    const ys = points.map((p) => p.y);
    const yLo = Math.max(0, Math.floor(Math.min(...ys)));
    const yHi = Math.min(this.height - 1, Math.ceil(Math.max(...ys)));
    for (let y = yLo; y <= yHi; y++) {
      const yc = y + 0.5;
      const xs: number[] = [];
      for (let i = 0; i < points.length; i++) {
        const a = points[i];
        const b = points[(i + 1) % points.length];
        if ((a.y <= yc && b.y > yc) || (b.y <= yc && a.y > yc)) {
          xs.push(a.x + ((yc - a.y) / (b.y - a.y)) * (b.x - a.x));
        }
      }
      xs.sort((p, q) => p - q);
      for (let i = 0; i + 1 < xs.length; i += 2) {
        const x0 = Math.max(0, Math.round(xs[i]));
        const x1 = Math.min(this.width - 1, Math.round(xs[i + 1]));
        for (let x = x0; x <= x1; x++) this.blend(x, y, rgb, alpha);
      }
    }
  }

  line(a: Point, b: Point, rgb: [number, number, number], width = 1,
       dash?: [number, number]) {
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const len = Math.hypot(dx, dy);
    const steps = Math.max(1, Math.ceil(len * 2));
    const r = width / 2;
    for (let s = 0; s <= steps; s++) {
      const t = s / steps;
      if (dash) {
        const along = len * t;
        if (along % (dash[0] + dash[1]) > dash[0]) continue;
      }
      const cx = a.x + dx * t;
      const cy = a.y + dy * t;
      for (let yy = Math.floor(cy - r); yy <= Math.ceil(cy + r); yy++) {
        for (let xx = Math.floor(cx - r); xx <= Math.ceil(cx + r); xx++) {
          if (Math.hypot(xx - cx, yy - cy) <= r + 0.25) this.blend(xx, yy, rgb, 1);
        }
      }
    }
  }

  /** Renders uppercase text; returns pixel width. scale 1 -> 6px advance. */
  text(x: number, y: number, s: string, rgb: [number, number, number],
       scale = 2, anchor: "start" | "middle" | "end" = "start") {
    const chars = s.toUpperCase().split("");
    const widthPx = chars.length * (GLYPH_W + 1) * scale;
    let ox = x;
    if (anchor === "middle") ox -= widthPx / 2;
    if (anchor === "end") ox -= widthPx;
    for (const ch of chars) {
      const glyph = GLYPHS[ch] ?? GLYPHS[" "];
      for (let r = 0; r < GLYPH_H; r++) {
        for (let c = 0; c < GLYPH_W; c++) {
          if (glyph[r][c] === "X") {
            this.fillRect(Math.round(ox + c * scale), Math.round(y + r * scale),
                          scale, scale, rgb);
          }
        }
      }
      ox += (GLYPH_W + 1) * scale;
    }
    return widthPx;
  }

  /** Vertical text reading bottom-to-top. (x, y) is the bottom-left corner. */
  textVertical(x: number, y: number, s: string, rgb: [number, number, number],
               scale = 2) {
    const chars = s.toUpperCase().split("");
    let oy = y;
    for (const ch of chars) {
      const glyph = GLYPHS[ch] ?? GLYPHS[" "];
      for (let r = 0; r < GLYPH_H; r++) {
        for (let c = 0; c < GLYPH_W; c++) {
          if (glyph[r][c] === "X") {
            // rotate the glyph grid 90 degrees counterclockwise
            this.fillRect(Math.round(x + r * scale),
                          Math.round(oy - c * scale), scale, scale, rgb);
          }
        }
      }
      oy -= (GLYPH_W + 1) * scale;
    }
  }
}

// --- PNG encoding ------------------------------------------------------------

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    table[n] = c >>> 0;
  }
  return table;
})();

function crc32(...bufs: Buffer[]): number {
  let c = 0xffffffff;
  for (const buf of bufs) {
    for (const byte of buf) c = CRC_TABLE[(c ^ byte) & 0xff] ^ (c >>> 8);
  }
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, data: Buffer): Buffer {
  const len = Buffer.alloc(4);
  len.writeUInt32BE(data.length);
  const typeBuf = Buffer.from(type, "ascii");
  const crc = Buffer.alloc(4);
  crc.writeUInt32BE(crc32(typeBuf, data));
  return Buffer.concat([len, typeBuf, data, crc]);
}

export function encodePng(raster: Raster): Buffer {
  const { width, height, data } = raster;
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(width, 0);
  ihdr.writeUInt32BE(height, 4);
  ihdr[8] = 8;   // bit depth
  ihdr[9] = 6;   // RGBA
  const raw = Buffer.alloc(height * (1 + width * 4));
  for (let y = 0; y < height; y++) {
    const rowStart = y * (1 + width * 4);
    raw[rowStart] = 0; // filter: none
    Buffer.from(data.buffer, y * width * 4, width * 4).copy(raw, rowStart + 1);
  }
  return Buffer.concat([
    Buffer.from([137, 80, 78, 71, 13, 10, 26, 10]),
    chunk("IHDR", ihdr),
    chunk("IDAT", deflateSync(raw, { level: 9 })),
    chunk("IEND", Buffer.alloc(0)),
  ]);
}

// --- figure ------------------------------------------------------------------

const BLACK: [number, number, number] = [0, 0, 0];
const GRID: [number, number, number] = [221, 221, 221];

export function renderPng(layout: Layout): Buffer {
  const img = new Raster(layout.width, layout.height);
  const { plot } = layout;

  for (const tick of layout.yTicks) {
    img.line({ x: plot.x0, y: tick.pos }, { x: plot.x1, y: tick.pos }, GRID, 1);
    img.text(plot.x0 - 8, tick.pos - 5, tick.label, BLACK, 1.5 as number, "end");
  }
  for (const tick of layout.xTicks) {
    img.line({ x: tick.pos, y: plot.y1 }, { x: tick.pos, y: plot.y1 + 5 }, BLACK, 1);
    img.text(tick.pos, plot.y1 + 10, tick.label, BLACK, 1.5 as number, "middle");
  }

  for (const curve of layout.curves) {
    img.fillPolygon(curve.band, parseColor(curve.color), 0.18);
  }
  img.line({ x: plot.x0, y: layout.baselineY }, { x: plot.x1, y: layout.baselineY },
           parseColor(BASELINE_COLOR), 1.5, [7, 5]);
  img.text(plot.x0 + 6, layout.baselineY - 16, layout.baselineLabel,
           parseColor(BASELINE_COLOR), 1.5 as number);
  for (const curve of layout.curves) {
    const rgb = parseColor(curve.color);
    for (let k = 0; k + 1 < curve.line.length; k++) {
      img.line(curve.line[k], curve.line[k + 1], rgb, 2);
    }
    for (const p of curve.line) img.line(p, p, rgb, 4);
  }

  img.line({ x: plot.x0, y: plot.y1 }, { x: plot.x1, y: plot.y1 }, BLACK, 1.5);
  img.line({ x: plot.x0, y: plot.y0 }, { x: plot.x0, y: plot.y1 }, BLACK, 1.5);
  img.text((plot.x0 + plot.x1) / 2, layout.height - 24, layout.xLabel, BLACK, 2, "middle");
  img.textVertical(6, (plot.y0 + plot.y1) / 2 + 30, layout.yLabel, BLACK, 2);

  for (const item of layout.legend) {
    img.line({ x: item.x, y: item.y }, { x: item.x + 26, y: item.y },
             parseColor(item.color), 2.5);
    img.text(item.x + 34, item.y - 6, item.label, BLACK, 1.5 as number);
  }
  return encodePng(img);
}
