// PNG export of the current rendering at a configurable scale factor.
//
// In browsers the vector scene is rasterized through a canvas; in
// canvas-less environments (tests, headless tooling) a small software
// rasterizer paints boxes and edges directly and the result is encoded as
// a PNG with stored (uncompressed) deflate blocks.  Exports carry a
// metadata overlay describing the visible nodes so tests can assert on
// structure without decoding pixels.

import type { LayoutBox, LayoutResult } from "./layout.js";
import type { ViewportTransform } from "./state.js";

const MARGIN = 16;

export interface ExportMeta {
  scale: number;
  width: number;
  height: number;
  nodes: { key: string; classes: string[] }[];
}

export interface PngExport {
  bytes: Uint8Array;
  meta: ExportMeta;
}

// --- PNG encoding -----------------------------------------------------

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[n] = c >>> 0;
  }
  return table;
})();

function crc32(data: Uint8Array): number {
  let crc = 0xffffffff;
  for (let i = 0; i < data.length; i++) {
    crc = CRC_TABLE[(crc ^ data[i]!) & 0xff]! ^ (crc >>> 8);
  }
  return (crc ^ 0xffffffff) >>> 0;
}

function adler32(data: Uint8Array): number {
  let a = 1;
  let b = 0;
  for (let i = 0; i < data.length; i++) {
    a = (a + data[i]!) % 65521;
    b = (b + a) % 65521;
  }
  return ((b << 16) | a) >>> 0;
}

function u32(value: number): Uint8Array {
  return new Uint8Array([
    (value >>> 24) & 0xff,
    (value >>> 16) & 0xff,
    (value >>> 8) & 0xff,
    value & 0xff,
  ]);
}

function chunk(type: string, data: Uint8Array): Uint8Array {
  const typeBytes = new TextEncoder().encode(type);
  const body = new Uint8Array(typeBytes.length + data.length);
  body.set(typeBytes, 0);
  body.set(data, typeBytes.length);
  const out = new Uint8Array(4 + body.length + 4);
  out.set(u32(data.length), 0);
  out.set(body, 4);
  out.set(u32(crc32(body)), 4 + body.length);
  return out;
}

/** zlib stream using stored (uncompressed) deflate blocks. */
function storedZlib(raw: Uint8Array): Uint8Array {
  const blocks: Uint8Array[] = [new Uint8Array([0x78, 0x01])];
  const MAX = 65535;
  for (let offset = 0; offset < raw.length || offset === 0; offset += MAX) {
    const slice = raw.subarray(offset, Math.min(offset + MAX, raw.length));
    const final = offset + MAX >= raw.length ? 1 : 0;
    const header = new Uint8Array(5);
    header[0] = final;
    header[1] = slice.length & 0xff;
    header[2] = (slice.length >>> 8) & 0xff;
    header[3] = ~slice.length & 0xff;
    header[4] = (~slice.length >>> 8) & 0xff;
    blocks.push(header, slice);
    if (final) break;
  }
  blocks.push(u32(adler32(raw)));
  let total = 0;
  for (const b of blocks) total += b.length;
  const out = new Uint8Array(total);
  let pos = 0;
  for (const b of blocks) {
    out.set(b, pos);
    pos += b.length;
  }
  return out;
}

export function encodePng(
  width: number,
  height: number,
  rgba: Uint8Array,
): Uint8Array {
  const ihdr = new Uint8Array(13);
  ihdr.set(u32(width), 0);
  ihdr.set(u32(height), 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 6; // RGBA
  const raw = new Uint8Array(height * (1 + width * 4));
  for (let y = 0; y < height; y++) {
    const rowStart = y * (1 + width * 4);
    raw[rowStart] = 0; // filter: none
    raw.set(rgba.subarray(y * width * 4, (y + 1) * width * 4), rowStart + 1);
  }
  const signature = new Uint8Array([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);
  const parts = [
    signature,
    chunk("IHDR", ihdr),
    chunk("IDAT", storedZlib(raw)),
    chunk("IEND", new Uint8Array(0)),
  ];
  let total = 0;
  for (const p of parts) total += p.length;
  const out = new Uint8Array(total);
  let pos = 0;
  for (const p of parts) {
    out.set(p, pos);
    pos += p.length;
  }
  return out;
}

// --- software rasterizer ----------------------------------------------

const FILL_BY_CLASS: [string, [number, number, number]][] = [
  ["origin-A", [214, 233, 248]],
  ["origin-B", [251, 227, 200]],
  ["unified", [211, 239, 211]],
  ["collapsed", [228, 230, 234]],
  ["normal", [248, 249, 251]],
  ["ambiguous-dashed", [248, 249, 251]],
  ["ref-stub", [255, 255, 255]],
];

function fillColor(classes: string[]): [number, number, number] {
  for (const [name, color] of FILL_BY_CLASS) {
    if (classes.includes(name)) return color;
  }
  return [248, 249, 251];
}

class Raster {
  pixels: Uint8Array;

  constructor(public width: number, public height: number) {
    this.pixels = new Uint8Array(width * height * 4).fill(255);
  }

  set(x: number, y: number, [r, g, b]: [number, number, number]): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 4;
    this.pixels[i] = r;
    this.pixels[i + 1] = g;
    this.pixels[i + 2] = b;
    this.pixels[i + 3] = 255;
  }

  fillRect(x0: number, y0: number, w: number, h: number, color: [number, number, number]): void {
    for (let y = Math.floor(y0); y < y0 + h; y++) {
      for (let x = Math.floor(x0); x < x0 + w; x++) this.set(x, y, color);
    }
  }

  strokeRect(x0: number, y0: number, w: number, h: number, t: number, color: [number, number, number]): void {
    this.fillRect(x0, y0, w, t, color);
    this.fillRect(x0, y0 + h - t, w, t, color);
    this.fillRect(x0, y0, t, h, color);
    this.fillRect(x0 + w - t, y0, t, h, color);
  }

  line(x0: number, y0: number, x1: number, y1: number, color: [number, number, number]): void {
    const steps = Math.max(Math.abs(x1 - x0), Math.abs(y1 - y0), 1);
    for (let s = 0; s <= steps; s++) {
      const t = s / steps;
      this.set(Math.round(x0 + (x1 - x0) * t), Math.round(y0 + (y1 - y0) * t), color);
    }
  }
}

const EDGE_COLOR: [number, number, number] = [137, 147, 164];
const STROKE_COLOR: [number, number, number] = [66, 82, 110];

export function rasterizeScene(
  layout: LayoutResult,
  viewport: ViewportTransform,
  scale: number,
): { pixels: Uint8Array; width: number; height: number } {
  const baseWidth = layout.width + 2 * MARGIN;
  const baseHeight = layout.height + 2 * MARGIN;
  const width = Math.max(1, Math.ceil(baseWidth * scale));
  const height = Math.max(1, Math.ceil(baseHeight * scale));
  const raster = new Raster(width, height);

  const tx = (v: number): number => (viewport.panX + viewport.zoom * (v + MARGIN)) * scale;
  const ty = (v: number): number => (viewport.panY + viewport.zoom * (v + MARGIN)) * scale;
  const ts = (v: number): number => viewport.zoom * v * scale;

  const byKey = new Map(layout.boxes.map((b) => [b.key, b]));
  for (const [parentKey, childKey] of layout.edges) {
    const parent = byKey.get(parentKey);
    const child = byKey.get(childKey);
    if (!parent || !child) continue;
    raster.line(
      tx(parent.x), ty(parent.y + parent.height),
      tx(child.x), ty(child.y),
      EDGE_COLOR,
    );
  }
  const strokeWidth = Math.max(1, Math.round(scale * viewport.zoom));
  for (const box of layout.boxes) {
    const left = tx(box.x - box.width / 2);
    const top = ty(box.y);
    raster.fillRect(left, top, ts(box.width), ts(box.height), fillColor(box.classes));
    raster.strokeRect(left, top, ts(box.width), ts(box.height), strokeWidth, STROKE_COLOR);
  }
  return { pixels: raster.pixels, width, height };
}

function metaFor(layout: LayoutResult, scale: number, width: number, height: number): ExportMeta {
  return {
    scale,
    width,
    height,
    nodes: layout.boxes.map((b) => ({ key: b.key, classes: [...b.classes] })),
  };
}

/** Rasterize the current visible scene; uses canvas when one is available. */
export async function exportPng(
  layout: LayoutResult,
  viewport: ViewportTransform,
  scale = 4,
  svgText?: string,
  doc: Document | undefined = typeof document === "undefined" ? undefined : document,
): Promise<PngExport> {
  if (doc !== undefined && svgText !== undefined) {
    const canvasExport = await tryCanvasExport(doc, layout, svgText, scale);
    if (canvasExport) {
      return {
        bytes: canvasExport.bytes,
        meta: metaFor(layout, scale, canvasExport.width, canvasExport.height),
      };
    }
  }
  const { pixels, width, height } = rasterizeScene(layout, viewport, scale);
  return {
    bytes: encodePng(width, height, pixels),
    meta: metaFor(layout, scale, width, height),
  };
}

async function tryCanvasExport(
  doc: Document,
  layout: LayoutResult,
  svgText: string,
  scale: number,
): Promise<{ bytes: Uint8Array; width: number; height: number } | null> {
  const canvas = doc.createElement("canvas");
  canvas.width = Math.ceil((layout.width + 2 * MARGIN) * scale);
  canvas.height = Math.ceil((layout.height + 2 * MARGIN) * scale);
  const ctx = canvas.getContext && canvas.getContext("2d");
  if (!ctx || typeof Image === "undefined" || typeof URL.createObjectURL !== "function") {
    return null;
  }
  const { width, height } = canvas;
  return new Promise((resolve) => {
    const blob = new Blob([svgText], { type: "image/svg+xml" });
    const url = URL.createObjectURL(blob);
    const image = new Image();
    image.onload = () => {
      ctx.scale(scale, scale);
      ctx.drawImage(image, 0, 0);
      URL.revokeObjectURL(url);
      canvas.toBlob((out) => {
        if (!out) {
          resolve(null);
          return;
        }
        out.arrayBuffer().then((buffer) =>
          resolve({ bytes: new Uint8Array(buffer), width, height }),
        );
      }, "image/png");
    };
    image.onerror = () => {
      URL.revokeObjectURL(url);
      resolve(null);
    };
    image.src = url;
  });
}
