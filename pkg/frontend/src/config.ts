/** Config validation mirroring the CLI's rules, so invalid configs fail
 * locally with the same constraints the engine would reject (exit 2). */

import { z } from "zod";

export const EDGE_MODES = [
  "lower-star",
  "upper-star",
  "relaxed-ascending",
  "relaxed-descending",
] as const;

const NODE_FILTERS = ["spd", "curvature-distance", "hks", "multi"] as const;
const PAIR_FILTERS = ["pairwise-sum", "tuple-distance"] as const;

const base = z.object({
  /** hop radius; omit for the engine's density-based default */
  k: z.number().int().min(1).optional(),
  edgeMode: z.enum(EDGE_MODES).default("lower-star"),
  piRes: z
    .tuple([z.number().int().min(1), z.number().int().min(1)])
    .default([5, 5]),
  sigma: z.number().positive().default(1.0),
  piplus: z.boolean().default(false),
  workers: z.number().int().min(1).default(1),
  seed: z.number().int().default(0),
  cacheDir: z.string().optional(),
});

export const nodeConfigSchema = base.extend({
  /** "hks" may carry a diffusion time as "hks:0.1" */
  filter: z
    .string()
    .default("spd")
    .refine(
      (f) => (NODE_FILTERS as readonly string[]).includes(f.split(":")[0]),
      (f) => ({ message: `filter ${f} not valid for node features` }),
    ),
});

export const pairConfigSchema = base
  .extend({
    filter: z.enum(PAIR_FILTERS).default("pairwise-sum"),
  })
  .refine((c) => !c.piplus, {
    message: "PI+ structural counts need a single root",
  });

export type NodeConfig = z.input<typeof nodeConfigSchema>;
export type PairConfig = z.input<typeof pairConfigSchema>;

export interface GraphInput {
  numVertices: number;
  edges: Array<[number, number]>;
  /** canonical "u-v" keys, u < v */
  weights?: Record<string, number>;
}

export const graphSchema: z.ZodType<GraphInput> = z.object({
  numVertices: z.number().int().min(0),
  edges: z.array(z.tuple([z.number().int().min(0), z.number().int().min(0)])),
  weights: z.record(z.number().positive()).optional(),
});
