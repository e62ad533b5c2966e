/**
 * Reader for the loctopo binary feature-matrix format.
 *
 * Layout (little-endian throughout):
 *   bytes 0..3   magic "LTF1"
 *   uint32       layout string length, then UTF-8 "name:len,name:len,..."
 *   uint32       id arity (1 = node ids, 2 = pairs)
 *   uint32       rows, uint32 cols
 *   rows*arity   uint32 row ids
 *   rows*cols    float64 values, row-major
 */

export type LayoutSegment = [name: string, length: number];

export interface FeatureBatch {
  rows: number;
  cols: number;
  /** row-major, rows x cols */
  values: Float64Array;
  layout: LayoutSegment[];
  /** node index per row, or [u, v] per row */
  ids: number[] | Array<[number, number]>;
}

const MAGIC = "LTF1";

export class FormatError extends Error {}

export function parseLayout(s: string): LayoutSegment[] {
  return s.split(",").map((part) => {
    const at = part.lastIndexOf(":");
    if (at < 0) throw new FormatError(`bad layout segment ${part}`);
    const len = Number(part.slice(at + 1));
    if (!Number.isInteger(len) || len < 0) {
      throw new FormatError(`bad segment length in ${part}`);
    }
    return [part.slice(0, at), len];
  });
}

export function readFeatureMatrix(buf: Buffer): FeatureBatch {
  if (buf.length < 8 || buf.toString("latin1", 0, 4) !== MAGIC) {
    throw new FormatError(`bad magic: expected ${MAGIC}`);
  }
  let off = 4;
  const layoutLen = buf.readUInt32LE(off);
  off += 4;
  const layout = parseLayout(buf.toString("utf8", off, off + layoutLen));
  off += layoutLen;
  const arity = buf.readUInt32LE(off);
  const rows = buf.readUInt32LE(off + 4);
  const cols = buf.readUInt32LE(off + 8);
  off += 12;
  if (arity !== 1 && arity !== 2) {
    throw new FormatError(`bad id arity ${arity}`);
  }
  const flat = new Array<number>(rows * arity);
  for (let i = 0; i < rows * arity; i++) {
    flat[i] = buf.readUInt32LE(off);
    off += 4;
  }
  const ids =
    arity === 1
      ? flat
      : Array.from({ length: rows }, (_, i): [number, number] => [
          flat[2 * i],
          flat[2 * i + 1],
        ]);
  const expected = off + rows * cols * 8;
  if (buf.length < expected) {
    throw new FormatError(
      `truncated values: have ${buf.length} bytes, need ${expected}`,
    );
  }
  // copy into an aligned Float64Array (the buffer offset may be unaligned)
  const values = new Float64Array(rows * cols);
  for (let i = 0; i < rows * cols; i++) {
    values[i] = buf.readDoubleLE(off + 8 * i);
  }
  const width = layout.reduce((acc, [, len]) => acc + len, 0);
  if (width !== cols) {
    throw new FormatError(`layout width ${width} != ${cols} columns`);
  }
  return { rows, cols, values, layout, ids };
}

/** Extract one named segment of one row. */
export function segment(
  batch: FeatureBatch,
  row: number,
  name: string,
): Float64Array {
  let off = 0;
  for (const [seg, len] of batch.layout) {
    if (seg === name) {
      const start = row * batch.cols + off;
      return batch.values.slice(start, start + len);
    }
    off += len;
  }
  throw new FormatError(`no segment named ${name}`);
}
