import { Client } from "./api.js";
import { App } from "./ui.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");
new App(root, new Client("")).start();
