/**
 * Bindings to the loctopo engine.
 *
 * The engine is consumed strictly through its external interfaces: the
 * `loctopo` CLI subcommands and the documented binary feature-matrix
 * format. Nothing is reimplemented here; these functions marshal inputs
 * to temp files, invoke the CLI, and parse its output into typed arrays.
 */

import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { FeatureBatch, readFeatureMatrix } from "./binary.js";
import {
  GraphInput,
  NodeConfig,
  PairConfig,
  graphSchema,
  nodeConfigSchema,
  pairConfigSchema,
} from "./config.js";

export { FeatureBatch, FormatError, LayoutSegment, segment } from "./binary.js";
export {
  EDGE_MODES,
  GraphInput,
  NodeConfig,
  PairConfig,
} from "./config.js";

const CLI = process.env.LOCTOPO_CLI ?? "loctopo";

export class EngineError extends Error {
  constructor(
    message: string,
    public readonly exitCode: number | null,
    public readonly stderr: string,
  ) {
    super(message);
  }
}

function runCli(args: string[]): string {
  const res = spawnSync(CLI, args, { encoding: "utf8" });
  if (res.error) {
    throw new EngineError(
      `failed to launch ${CLI}: ${res.error.message}`,
      null,
      "",
    );
  }
  if (res.status !== 0) {
    throw new EngineError(
      `${CLI} ${args[0] ?? ""} exited with ${res.status}: ${res.stderr.trim()}`,
      res.status,
      res.stderr,
    );
  }
  return res.stdout;
}

function writeGraphFile(dir: string, graph: GraphInput): string {
  const parsed = graphSchema.parse(graph);
  const path = join(dir, "graph.json");
  writeFileSync(
    path,
    JSON.stringify({
      num_vertices: parsed.numVertices,
      edges: parsed.edges,
      ...(parsed.weights ? { weights: parsed.weights } : {}),
    }),
  );
  return path;
}

function commonArgs(cfg: {
  k?: number;
  edgeMode: string;
  piRes: [number, number];
  sigma: number;
  piplus: boolean;
  workers: number;
  seed: number;
  cacheDir?: string;
  filter: string;
}): string[] {
  const args = [
    "--edge-mode", cfg.edgeMode,
    "--pi-res", `${cfg.piRes[0]}x${cfg.piRes[1]}`,
    "--sigma", String(cfg.sigma),
    "--workers", String(cfg.workers),
    "--seed", String(cfg.seed),
    "--filter", cfg.filter,
    "--format", "bin",
  ];
  if (cfg.k !== undefined) args.push("--k", String(cfg.k));
  if (cfg.piplus) args.push("--piplus");
  if (cfg.cacheDir !== undefined) args.push("--cache", cfg.cacheDir);
  return args;
}

function withTempDir<T>(fn: (dir: string) => T): T {
  const dir = mkdtempSync(join(tmpdir(), "loctopo-"));
  try {
    return fn(dir);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

/** One feature row per node, ordered by node index. */
export function nodeFeatures(
  graph: GraphInput,
  config: NodeConfig = {},
): FeatureBatch {
  const cfg = nodeConfigSchema.parse(config);
  return withTempDir((dir) => {
    const gpath = writeGraphFile(dir, graph);
    const out = join(dir, "features.bin");
    runCli([
      "features", "node",
      "--graph", gpath,
      "--out", out,
      ...commonArgs(cfg),
    ]);
    return readFeatureMatrix(readFileSync(out));
  });
}

/** One feature row per [u, v] pair, in input order. */
export function pairFeatures(
  graph: GraphInput,
  pairs: Array<[number, number]>,
  config: PairConfig = {},
): FeatureBatch {
  const cfg = pairConfigSchema.parse(config);
  return withTempDir((dir) => {
    const gpath = writeGraphFile(dir, graph);
    const ppath = join(dir, "pairs.txt");
    writeFileSync(ppath, pairs.map(([u, v]) => `${u} ${v}`).join("\n") + "\n");
    const out = join(dir, "features.bin");
    runCli([
      "features", "pair",
      "--graph", gpath,
      "--pairs", ppath,
      "--out", out,
      ...commonArgs(cfg),
    ]);
    return readFeatureMatrix(readFileSync(out));
  });
}

export interface EpdPoint {
  birth: number;
  death: number;
  dim: 0 | 1;
  kind: "ordinary" | "essential";
}

/** Extended persistence diagram of one node's (or pair's) vicinity. */
export function epd(
  graph: GraphInput,
  root: number | [number, number],
  options: { k?: number; filter?: string; edgeMode?: string } = {},
): EpdPoint[] {
  graphSchema.parse(graph);
  return withTempDir((dir) => {
    const gpath = writeGraphFile(dir, graph);
    const out = join(dir, "epd.json");
    const args = ["epd", "--graph", gpath, "--out", out, "--format", "json"];
    if (typeof root === "number") {
      args.push("--node", String(root));
    } else {
      args.push("--pair", String(root[0]), String(root[1]));
    }
    if (options.k !== undefined) args.push("--k", String(options.k));
    if (options.filter) args.push("--filter", options.filter);
    if (options.edgeMode) args.push("--edge-mode", options.edgeMode);
    runCli(args);
    return JSON.parse(readFileSync(out, "utf8")) as EpdPoint[];
  });
}

/** Version string of the underlying engine. */
export function engineVersion(): string {
  const m = runCli(["--version"]).match(/version\s+(\S+)/);
  if (!m) throw new EngineError("unparsable version output", 0, "");
  return m[1];
}
