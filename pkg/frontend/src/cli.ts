#!/usr/bin/env node
/**
 * Usage:
 *   render --csv <campaign.csv> --summary <summary.json> --out <figure.svg|png>
 *
 * Exit codes: 0 success, 1 bad input (missing file, schema violation),
 * 2 usage error.
 */

import { writeFileSync } from "node:fs";
import { renderFromFiles } from "./render.js";

function usage(): string {
  return "usage: render --csv <campaign.csv> --summary <summary.json> --out <figure.svg|png>";
}

export function main(argv: string[]): number {
  if (argv[0] !== "render") {
    console.error(usage());
    return 2;
  }
  const opts = new Map<string, string>();
  for (let k = 1; k < argv.length; k += 2) {
    const flag = argv[k];
    const value = argv[k + 1];
    if (!flag.startsWith("--") || value === undefined) {
      console.error(usage());
      return 2;
    }
    opts.set(flag.slice(2), value);
  }
  const csv = opts.get("csv");
  const summary = opts.get("summary");
  const out = opts.get("out");
  if (!csv || !summary || !out) {
    console.error(usage());
    return 2;
  }
  try {
    const image = renderFromFiles(csv, summary, out);
    writeFileSync(out, image);
  } catch (err) {
    const e = err as NodeJS.ErrnoException;
    console.error(e.code === "ENOENT" ? `missing file: ${e.path}` : e.message);
    return 1;
  }
  console.log(`wrote ${out}`);
  return 0;
}

if (process.argv[1] && import.meta.url.endsWith(process.argv[1].split("/").pop()!)) {
  process.exit(main(process.argv.slice(2)));
}
