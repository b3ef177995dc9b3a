#!/usr/bin/env node
/** Command-line entry point: `render --spec <path>` writes one SVG. */

import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { renderSpecFile } from "./render.js";

export async function main(argv: string[]): Promise<number> {
  let exitCode = 0;
  await yargs(argv)
    .scriptName("phasesym-plots")
    .command(
      "render",
      "render one plot spec (JSON) to an SVG file",
      (y) =>
        y.option("spec", {
          type: "string",
          demandOption: true,
          describe: "path to the plot spec JSON",
        }),
      (args) => {
        try {
          const out = renderSpecFile(args.spec);
          process.stdout.write(`wrote ${out}\n`);
        } catch (err) {
          process.stderr.write(`error: ${(err as Error).message}\n`);
          exitCode = 2;
        }
      },
    )
    .demandCommand(1)
    .strict()
    .fail((msg, err) => {
      process.stderr.write(`error: ${msg ?? err?.message}\n`);
      exitCode = 2;
    })
    .parseAsync();
  return exitCode;
}

const invokedDirectly = process.argv[1]?.endsWith("cli.js") || process.argv[1]?.endsWith("cli.ts");
if (invokedDirectly) {
  main(hideBin(process.argv)).then((code) => {
    process.exitCode = code;
  });
}
