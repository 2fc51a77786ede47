/** Browser entry point: ?doc=<id>&api=<base-url> select the document and
 * service; defaults suit `plume serve` on localhost. */

import { PlumeClient } from "./api.js";
import { App } from "./app.js";

const params = new URLSearchParams(window.location.search);
const apiBase = params.get("api") ?? "http://127.0.0.1:8040";
const documentId = params.get("doc") ?? "dashboard";

const mount = document.getElementById("app");
if (!mount) throw new Error("missing #app mount point");

const app = new App(mount, new PlumeClient(apiBase, documentId));
void app.load();

declare global {
  interface Window {
    plumeApp: App;
  }
}
window.plumeApp = app;
