import shop.core.Customer;
import shop.core.Order;
import shop.util.Log;

public class Bootstrap {
    Log log;

    void main() {
        Log l = log.tag("boot");
        l.info("starting");
    }

    void wire(Customer c, Order o) {
        int b = o.bonus();
        log.debug("wired");
    }
}
