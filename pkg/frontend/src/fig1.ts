#!/usr/bin/env node
import { runFigureCli } from "./cli.js";

process.exit(runFigureCli("fig1", process.argv.slice(2)));
